/**
 * Strict reader for the CLI's CSV outputs.
 *
 * The emitter writes plain comma-separated numbers with a header row and no
 * quoting, so parsing is a straight split; all schema problems are reported
 * by column name.
 */

export interface Table {
  columns: string[];
  rows: number[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string, expectedColumns: string[]): Table {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV input");
  }
  const columns = lines[0].split(",");
  for (const expected of expectedColumns) {
    if (!columns.includes(expected)) {
      throw new SchemaError(
        `missing column '${expected}' (header has: ${columns.join(", ")})`,
      );
    }
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new SchemaError(
        `row ${i} has ${parts.length} fields, header has ${columns.length}`,
      );
    }
    const row = parts.map((p) => (p === "" ? NaN : Number(p)));
    for (let j = 0; j < row.length; j++) {
      if (Number.isNaN(row[j]) && parts[j] !== "") {
        throw new SchemaError(`row ${i}, column '${columns[j]}': not a number: '${parts[j]}'`);
      }
    }
    rows.push(row);
  }
  return { columns, rows };
}

export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(`missing column '${name}'`);
  }
  return table.rows.map((r) => r[idx]);
}
