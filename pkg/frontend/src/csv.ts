// Plain numeric CSV tables with a mandatory header row, '.' decimal.

export interface Table {
  columns: string[];
  rows: number[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error('empty CSV: a header row is mandatory');
  }
  const columns = lines[0].split(',').map((c) => c.trim());
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(',');
    if (parts.length !== columns.length) {
      throw new Error(`row ${i} has ${parts.length} cells, expected ${columns.length}`);
    }
    rows.push(parts.map((p) => Number(p)));
  }
  return { columns, rows };
}

export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column '${name}' (have: ${table.columns.join(', ')})`);
  }
  return table.rows.map((r) => r[idx]);
}

/** Distinct values in first-appearance order (exact float identity). */
export function distinct(values: number[]): number[] {
  const seen = new Set<number>();
  const out: number[] = [];
  for (const v of values) {
    if (!seen.has(v)) {
      seen.add(v);
      out.push(v);
    }
  }
  return out;
}
