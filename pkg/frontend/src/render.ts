/**
 * Turn sweep CSVs into PNGs: parallax x noise heatmaps, averaged line plots
 * and timing curves.  Rendering is read-only over the CSV and fully
 * deterministic, so re-rendering the same input reproduces identical bytes.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { column, columnIndex, parseCsv, Table, uniqueSorted } from "./csv.js";
import { levelToRgb, rangeFor, valueToLevel } from "./colormap.js";
import { createImage, encodePng, Image, setPixel } from "./png.js";

export type PlotKind = "heatmap" | "line" | "timing";

export interface PlotSpec {
  csvPath: string;
  kind: PlotKind;
  metric: string;
  outPath: string;
  vmin?: number;
  vmax?: number;
  /** line plots: which grid axis gets averaged away (default "alpha"). */
  averageOver?: "alpha" | "noise";
}

export const HEATMAP_MARGIN = 12;
export const HEATMAP_CELL = 32;

const BLACK: [number, number, number] = [0, 0, 0];
const SERIES_COLORS: [number, number, number][] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
];

export function heatmapCellOrigin(
  alphaIdx: number,
  noiseIdx: number,
  nNoise: number
): { x: number; y: number } {
  // alpha grows to the right; noise grows upward from the bottom edge
  return {
    x: HEATMAP_MARGIN + alphaIdx * HEATMAP_CELL,
    y: HEATMAP_MARGIN + (nNoise - 1 - noiseIdx) * HEATMAP_CELL,
  };
}

export function renderHeatmap(
  table: Table,
  metric: string,
  vmin?: number,
  vmax?: number
): { image: Image; alphas: number[]; noises: number[] } {
  const metricIdx = columnIndex(table, metric);
  const alphaIdx = columnIndex(table, "alpha");
  const noiseIdx = columnIndex(table, "noise_std");
  const alphas = uniqueSorted(table.rows.map((r) => r[alphaIdx]));
  const noises = uniqueSorted(table.rows.map((r) => r[noiseIdx]));
  if (table.rows.length !== alphas.length * noises.length) {
    throw new Error(
      `heatmap needs a complete grid: ${alphas.length} x ${noises.length} cells ` +
        `but ${table.rows.length} rows`
    );
  }
  const [lo, hi] = rangeFor(metric, vmin, vmax);
  const img = createImage(
    2 * HEATMAP_MARGIN + alphas.length * HEATMAP_CELL,
    2 * HEATMAP_MARGIN + noises.length * HEATMAP_CELL
  );
  for (const row of table.rows) {
    const ai = alphas.indexOf(row[alphaIdx]);
    const ni = noises.indexOf(row[noiseIdx]);
    const rgb = levelToRgb(valueToLevel(row[metricIdx], lo, hi));
    const { x, y } = heatmapCellOrigin(ai, ni, noises.length);
    for (let dy = 0; dy < HEATMAP_CELL; dy++) {
      for (let dx = 0; dx < HEATMAP_CELL; dx++) {
        setPixel(img, x + dx, y + dy, rgb);
      }
    }
  }
  // axis lines along the left and bottom grid edges
  const x0 = HEATMAP_MARGIN - 1;
  const y1 = HEATMAP_MARGIN + noises.length * HEATMAP_CELL;
  for (let y = HEATMAP_MARGIN - 1; y <= y1; y++) {
    setPixel(img, x0, y, BLACK);
  }
  for (let x = x0; x <= HEATMAP_MARGIN + alphas.length * HEATMAP_CELL; x++) {
    setPixel(img, x, y1, BLACK);
  }
  return { image: img, alphas, noises };
}

export interface Series {
  name: string;
  x: number[];
  y: number[];
}

/**
 * Collapse the grid along one axis: averaging over alpha leaves one mean per
 * noise level (and vice versa), matching column/row averaging of the grid.
 */
export function computeAveragedSeries(
  table: Table,
  metric: string,
  averageOver: "alpha" | "noise"
): Series {
  const metricVals = column(table, metric);
  const keyName = averageOver === "alpha" ? "noise_std" : "alpha";
  const keys = column(table, keyName);
  const axis = uniqueSorted(keys);
  const y = axis.map((k) => {
    const picked = metricVals.filter((_, i) => keys[i] === k);
    return picked.reduce((a, b) => a + b, 0) / picked.length;
  });
  return { name: metric, x: axis, y };
}

const LINE_WIDTH = 480;
const LINE_HEIGHT = 320;
const LINE_LEFT = 46;
const LINE_RIGHT = 12;
const LINE_TOP = 12;
const LINE_BOTTOM = 34;

function drawSegment(img: Image, x0: number, y0: number, x1: number, y1: number, rgb: [number, number, number]): void {
  // Bresenham
  let [cx, cy] = [x0, y0];
  const dx = Math.abs(x1 - x0);
  const dy = -Math.abs(y1 - y0);
  const sx = x0 < x1 ? 1 : -1;
  const sy = y0 < y1 ? 1 : -1;
  let err = dx + dy;
  for (;;) {
    setPixel(img, cx, cy, rgb);
    if (cx === x1 && cy === y1) {
      break;
    }
    const e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      cx += sx;
    }
    if (e2 <= dx) {
      err += dx;
      cy += sy;
    }
  }
}

function drawMarker(img: Image, x: number, y: number, rgb: [number, number, number]): void {
  for (let dy = -1; dy <= 1; dy++) {
    for (let dx = -1; dx <= 1; dx++) {
      setPixel(img, x + dx, y + dy, rgb);
    }
  }
}

export interface LineLayout {
  image: Image;
  /** pixel positions of every series point, series-major */
  markers: { x: number; y: number }[][];
}

function renderSeriesPlot(seriesList: Series[], xLog: boolean): LineLayout {
  const img = createImage(LINE_WIDTH, LINE_HEIGHT);
  const xsRaw = seriesList.flatMap((s) => s.x);
  const xs = xLog ? xsRaw.map(Math.log10) : xsRaw;
  const ys = seriesList.flatMap((s) => s.y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(0, ...ys);
  const yMax = Math.max(...ys) || 1;
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;
  const px = (x: number) =>
    Math.round(
      LINE_LEFT + (((xLog ? Math.log10(x) : x) - xMin) / xSpan) * (LINE_WIDTH - LINE_LEFT - LINE_RIGHT)
    );
  const py = (y: number) =>
    Math.round(
      LINE_HEIGHT - LINE_BOTTOM - ((y - yMin) / ySpan) * (LINE_HEIGHT - LINE_TOP - LINE_BOTTOM)
    );
  // axes
  drawSegment(img, LINE_LEFT - 1, LINE_TOP, LINE_LEFT - 1, LINE_HEIGHT - LINE_BOTTOM, BLACK);
  drawSegment(img, LINE_LEFT - 1, LINE_HEIGHT - LINE_BOTTOM, LINE_WIDTH - LINE_RIGHT, LINE_HEIGHT - LINE_BOTTOM, BLACK);
  const markers: { x: number; y: number }[][] = [];
  seriesList.forEach((series, si) => {
    const color = SERIES_COLORS[si % SERIES_COLORS.length];
    const pts = series.x.map((x, i) => ({ x: px(x), y: py(series.y[i]) }));
    for (let i = 1; i < pts.length; i++) {
      drawSegment(img, pts[i - 1].x, pts[i - 1].y, pts[i].x, pts[i].y, color);
    }
    for (const p of pts) {
      drawMarker(img, p.x, p.y, color);
    }
    markers.push(pts);
  });
  return { image: img, markers };
}

export function renderLine(
  table: Table,
  metric: string,
  averageOver: "alpha" | "noise"
): LineLayout & { series: Series } {
  const series = computeAveragedSeries(table, metric, averageOver);
  // the parallax axis is log-spaced, the noise axis linear
  const layout = renderSeriesPlot([series], averageOver === "noise");
  return { ...layout, series };
}

const TIMING_COLUMNS = ["t_method1_ns", "t_method2_ns", "t_traditional_ns"];

export function renderTiming(table: Table): LineLayout & { series: Series[] } {
  const n = column(table, "n_points");
  const seriesList = TIMING_COLUMNS.map((name) => ({
    name,
    x: n,
    y: column(table, name),
  }));
  const layout = renderSeriesPlot(seriesList, false);
  return { ...layout, series: seriesList };
}

export function render(spec: PlotSpec): void {
  const table = parseCsv(readFileSync(spec.csvPath, "utf-8"));
  let image: Image;
  if (spec.kind === "heatmap") {
    image = renderHeatmap(table, spec.metric, spec.vmin, spec.vmax).image;
  } else if (spec.kind === "line") {
    image = renderLine(table, spec.metric, spec.averageOver ?? "alpha").image;
  } else if (spec.kind === "timing") {
    image = renderTiming(table).image;
  } else {
    throw new Error(`unknown plot kind '${spec.kind}'`);
  }
  writeFileSync(spec.outPath, encodePng(image));
}
