import { createHash } from 'node:crypto';

// Canonical digest of the exact numbers a figure plots. Column names are
// sorted so the digest is independent of plotting order; values use the
// shortest round-trip decimal form, so a CSV value and its parsed double
// always hash identically.

export function checksumColumns(columns: Record<string, number[]>): string {
  const names = Object.keys(columns).sort();
  const parts = names.map((n) => `${n}:${columns[n].map((v) => String(v)).join(',')}`);
  return createHash('sha256').update(parts.join(';')).digest('hex');
}
