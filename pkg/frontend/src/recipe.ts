import { readFileSync } from 'node:fs';
import { dirname, isAbsolute, join } from 'node:path';

export type FigureKind = 'heatmap' | 'curve' | 'frame_strip';

export interface FigureRecipe {
  kind: FigureKind;
  artifact_dir: string;
  /** series file for heatmap/curve */
  series?: string;
  x?: string;
  y?: string;
  value?: string;
  /** field files for frame_strip; 'auto' lists them from summary.json */
  fields?: string[] | 'auto';
  title?: string;
  x_label?: string;
  y_label?: string;
  /** horizontal reference lines (style only, never derived from data) */
  hlines?: number[];
  out?: string;
}

export const SUPPORTED_ARTIFACT_SCHEMA = 1;

const KEYS = new Set([
  'kind', 'artifact_dir', 'series', 'x', 'y', 'value', 'fields',
  'title', 'x_label', 'y_label', 'hlines', 'out',
]);

export function loadRecipe(path: string): FigureRecipe {
  const raw = JSON.parse(readFileSync(path, 'utf8')) as Record<string, unknown>;
  for (const k of Object.keys(raw)) {
    if (!KEYS.has(k)) {
      throw new Error(`unknown recipe key '${k}'`);
    }
  }
  const kind = raw.kind as FigureKind;
  if (!['heatmap', 'curve', 'frame_strip'].includes(kind)) {
    throw new Error(`unknown figure kind '${String(raw.kind)}'`);
  }
  if (typeof raw.artifact_dir !== 'string') {
    throw new Error('recipe needs artifact_dir');
  }
  const recipe = raw as unknown as FigureRecipe;
  if (!isAbsolute(recipe.artifact_dir)) {
    recipe.artifact_dir = join(dirname(path), recipe.artifact_dir);
  }
  if (kind !== 'frame_strip' && typeof recipe.series !== 'string') {
    throw new Error(`${kind} recipes need a series file`);
  }
  return recipe;
}

export interface ArtifactSummary {
  schema_version: number;
  experiment: string;
  series: string[];
  fields: { file: string; time?: number }[];
  summary: Record<string, unknown>;
}

export function loadSummary(artifactDir: string): ArtifactSummary {
  const doc = JSON.parse(readFileSync(join(artifactDir, 'summary.json'), 'utf8')) as ArtifactSummary;
  if (doc.schema_version !== SUPPORTED_ARTIFACT_SCHEMA) {
    throw new Error(
      `artifact schema version ${doc.schema_version} not supported ` +
        `(expected ${SUPPORTED_ARTIFACT_SCHEMA})`,
    );
  }
  return doc;
}
