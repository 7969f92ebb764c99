#!/usr/bin/env node
/**
 * figure-render --csv grid.csv --kind heatmap --metric rot_rmse_deg --out img.png
 *
 * Kinds: heatmap (parallax x noise grid), line (grid averaged over one axis,
 * --average-over alpha|noise), timing (bench CSV curves).
 */

import { parseArgs } from "node:util";

import { MissingColumnError } from "./csv.js";
import { PlotKind, PlotSpec, render } from "./render.js";

export function cliMain(argv: string[]): number {
  let values;
  try {
    values = parseArgs({
      args: argv,
      options: {
        csv: { type: "string" },
        kind: { type: "string" },
        metric: { type: "string" },
        out: { type: "string" },
        vmin: { type: "string" },
        vmax: { type: "string" },
        "average-over": { type: "string" },
      },
    }).values;
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  const { csv, kind, metric, out } = values;
  if (!csv || !kind || !out || (kind !== "timing" && !metric)) {
    process.stderr.write(
      "usage: figure-render --csv <path> --kind heatmap|line|timing --metric <column> --out <png>\n"
    );
    return 1;
  }
  if (kind !== "heatmap" && kind !== "line" && kind !== "timing") {
    process.stderr.write(`unknown kind '${kind}'\n`);
    return 1;
  }
  const averageOver = values["average-over"];
  if (averageOver !== undefined && averageOver !== "alpha" && averageOver !== "noise") {
    process.stderr.write(`--average-over must be alpha or noise, got '${averageOver}'\n`);
    return 1;
  }
  const spec: PlotSpec = {
    csvPath: csv,
    kind: kind as PlotKind,
    metric: metric ?? "",
    outPath: out,
    vmin: values.vmin !== undefined ? Number(values.vmin) : undefined,
    vmax: values.vmax !== undefined ? Number(values.vmax) : undefined,
    averageOver: averageOver as "alpha" | "noise" | undefined,
  };
  try {
    render(spec);
  } catch (err) {
    if (err instanceof MissingColumnError) {
      process.stderr.write(`${err.message}\n`);
      return 2;
    }
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

const isDirectRun =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (isDirectRun) {
  process.exit(cliMain(process.argv.slice(2)));
}
