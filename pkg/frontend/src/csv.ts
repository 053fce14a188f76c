/** Minimal CSV reading for the simulator's own output files. */

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

/** Parse comma-separated text with a header row (no quoting, as written by
 * the simulator). */
export function parseCsv(text: string): Table {
  const lines = text
    .split(/\r?\n/)
    .filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header row");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `row ${i + 2}: expected ${columns.length} cells, got ${cells.length}`,
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((c, j) => (row[c] = cells[j].trim()));
    return row;
  });
  if (rows.length === 0) {
    throw new SchemaError("empty CSV: header only, no data rows");
  }
  return { columns, rows };
}

/** Assert that every required column exists, naming the missing ones. */
export function requireColumns(table: Table, required: string[]): void {
  const missing = required.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `missing required column(s): ${missing.join(", ")} ` +
        `(found: ${table.columns.join(", ")})`,
    );
  }
}

export function numeric(table: Table, column: string): number[] {
  return table.rows.map((row, i) => {
    const v = Number(row[column]);
    if (!Number.isFinite(v)) {
      throw new SchemaError(`column ${column}, row ${i + 2}: not a number: ${row[column]}`);
    }
    return v;
  });
}
