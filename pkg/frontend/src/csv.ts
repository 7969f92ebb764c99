/**
 * Minimal reader for the sweep CSVs: `#` comment lines, then a header line,
 * then numeric rows.
 */

export interface Table {
  columns: string[];
  rows: number[][];
}

export class MissingColumnError extends Error {}

export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0 && !l.startsWith("#"));
  if (lines.length < 2) {
    throw new Error("CSV needs a header line and at least one data row");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows = lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(`row ${i + 1}: expected ${columns.length} fields, got ${parts.length}`);
    }
    return parts.map((p) => Number(p));
  });
  return { columns, rows };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new MissingColumnError(
      `column '${name}' not in CSV header (${table.columns.join(", ")})`
    );
  }
  return idx;
}

export function column(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((r) => r[idx]);
}

export function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}
