import { readFileSync } from 'node:fs';
import { join } from 'node:path';

import { checksumColumns } from './checksum.js';
import { colorFor } from './colormap.js';
import { column, distinct, parseCsv, Table } from './csv.js';
import { ArtifactSummary, FigureRecipe, loadSummary } from './recipe.js';
import { drawAxes, drawColorbar, Extent, fmt, Frame, scaleX, scaleY, SvgDoc } from './svg.js';

export interface RenderResult {
  svg: string;
  /** exactly the numbers that were plotted, keyed by column */
  data: Record<string, number[]>;
  checksum: string;
}

// Rendering never recomputes physics: values pass from artifact columns to
// geometry/colors untouched (axis scaling and color mapping only).

export function render(recipe: FigureRecipe): RenderResult {
  const summary = loadSummary(recipe.artifact_dir);
  switch (recipe.kind) {
    case 'heatmap':
      return renderHeatmap(recipe);
    case 'curve':
      return renderCurve(recipe);
    case 'frame_strip':
      return renderFrameStrip(recipe, summary);
  }
}

function loadTable(recipe: FigureRecipe, file: string): Table {
  return parseCsv(readFileSync(join(recipe.artifact_dir, file), 'utf8'));
}

function finiteExtent(values: number[]): Extent {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) return { lo: 0, hi: 1 };
  return { lo: Math.min(...finite), hi: Math.max(...finite) };
}

function emptyFigure(doc: SvgDoc, f: Frame, recipe: FigureRecipe, data: Record<string, number[]>): RenderResult {
  drawAxes(doc, f, recipe.x_label ?? recipe.x ?? '', recipe.y_label ?? recipe.y ?? '');
  doc.text(f.x0 + f.w / 2, f.y0 + f.h / 2, 'no data', 16);
  const checksum = checksumColumns(data);
  doc.metadata({ data_sha256: checksum });
  return { svg: doc.render(), data, checksum };
}

function renderHeatmap(recipe: FigureRecipe): RenderResult {
  if (!recipe.x || !recipe.y || !recipe.value) {
    throw new Error('heatmap recipes need x, y and value columns');
  }
  const table = loadTable(recipe, recipe.series!);
  const xs = column(table, recipe.x);
  const ys = column(table, recipe.y);
  const vs = column(table, recipe.value);
  const data = { [recipe.x]: xs, [recipe.y]: ys, [recipe.value]: vs };

  const doc = new SvgDoc(640, 480);
  const f: Frame = { x0: 70, y0: 50, w: 470, h: 370, xExt: finiteExtent(xs), yExt: finiteExtent(ys) };
  if (recipe.title) doc.text(doc.width / 2, 26, recipe.title, 14);
  if (xs.length === 0) return emptyFigure(doc, f, recipe, data);

  const ux = distinct(xs).sort((a, b) => a - b);
  const uy = distinct(ys).sort((a, b) => a - b);
  const vExt = finiteExtent(vs);
  // cell sizes from the grid spacing (uniform grids; single-value axes get unit pads)
  const dx = ux.length > 1 ? (f.w / (ux.length - 1)) : f.w;
  const dy = uy.length > 1 ? (f.h / (uy.length - 1)) : f.h;
  for (let k = 0; k < vs.length; k++) {
    const cx = scaleX(f, xs[k]);
    const cy = scaleY(f, ys[k]);
    doc.rect(cx - dx / 2, cy - dy / 2, dx, dy, colorFor(vs[k], vExt.lo, vExt.hi));
  }
  drawAxes(doc, f, recipe.x_label ?? recipe.x, recipe.y_label ?? recipe.y, Math.min(5, ux.length));
  drawColorbar(doc, f.x0 + f.w + 24, f.y0, f.h, vExt, colorFor, recipe.value);
  const checksum = checksumColumns(data);
  doc.metadata({ data_sha256: checksum });
  return { svg: doc.render(), data, checksum };
}

function renderCurve(recipe: FigureRecipe): RenderResult {
  if (!recipe.x || !recipe.y) {
    throw new Error('curve recipes need x and y columns');
  }
  const table = loadTable(recipe, recipe.series!);
  const xs = column(table, recipe.x);
  const ys = column(table, recipe.y);
  const data = { [recipe.x]: xs, [recipe.y]: ys };

  const doc = new SvgDoc(640, 480);
  const f: Frame = { x0: 70, y0: 50, w: 500, h: 370, xExt: finiteExtent(xs), yExt: finiteExtent(ys) };
  if (recipe.title) doc.text(doc.width / 2, 26, recipe.title, 14);
  if (xs.length === 0) return emptyFigure(doc, f, recipe, data);

  for (const h of recipe.hlines ?? []) {
    if (h >= f.yExt.lo && h <= f.yExt.hi) {
      doc.line(f.x0, scaleY(f, h), f.x0 + f.w, scaleY(f, h), 'gray', '5,4');
    }
  }
  doc.polyline(
    xs.map((x, k) => [scaleX(f, x), scaleY(f, ys[k])] as [number, number]),
    'rgb(59,81,139)',
  );
  drawAxes(doc, f, recipe.x_label ?? recipe.x, recipe.y_label ?? recipe.y);
  const checksum = checksumColumns(data);
  doc.metadata({ data_sha256: checksum });
  return { svg: doc.render(), data, checksum };
}

function renderFrameStrip(recipe: FigureRecipe, summary: ArtifactSummary): RenderResult {
  let files: string[];
  if (!recipe.fields || recipe.fields === 'auto') {
    files = summary.fields.map((f) => f.file);
  } else {
    files = recipe.fields;
  }
  const times = new Map(summary.fields.map((f) => [f.file, f.time]));

  const tables = files.map((file) => loadTable(recipe, file));
  const data: Record<string, number[]> = {};
  files.forEach((file, i) => {
    data[`${file}:re_alpha`] = column(tables[i], 're_alpha');
    data[`${file}:im_alpha`] = column(tables[i], 'im_alpha');
    data[`${file}:value`] = column(tables[i], 'value');
  });

  const n = Math.max(files.length, 1);
  const cell = 200;
  const doc = new SvgDoc(40 + n * (cell + 16), cell + 96);
  if (recipe.title) doc.text(doc.width / 2, 22, recipe.title, 14);
  if (files.length === 0) {
    const f: Frame = { x0: 40, y0: 40, w: cell, h: cell, xExt: { lo: 0, hi: 1 }, yExt: { lo: 0, hi: 1 } };
    return emptyFigure(doc, f, recipe, data);
  }

  const vExt = finiteExtent(files.flatMap((file) => data[`${file}:value`]));
  files.forEach((file, i) => {
    const xs = data[`${file}:re_alpha`];
    const ys = data[`${file}:im_alpha`];
    const vs = data[`${file}:value`];
    const f: Frame = {
      x0: 24 + i * (cell + 16),
      y0: 40,
      w: cell,
      h: cell,
      xExt: finiteExtent(xs),
      yExt: finiteExtent(ys),
    };
    const ux = distinct(xs).sort((a, b) => a - b);
    const uy = distinct(ys).sort((a, b) => a - b);
    const dx = ux.length > 1 ? f.w / (ux.length - 1) : f.w;
    const dy = uy.length > 1 ? f.h / (uy.length - 1) : f.h;
    for (let k = 0; k < vs.length; k++) {
      doc.rect(scaleX(f, xs[k]) - dx / 2, scaleY(f, ys[k]) - dy / 2, dx, dy, colorFor(vs[k], vExt.lo, vExt.hi));
    }
    doc.line(f.x0, f.y0, f.x0 + f.w, f.y0, 'black');
    doc.line(f.x0, f.y0 + f.h, f.x0 + f.w, f.y0 + f.h, 'black');
    doc.line(f.x0, f.y0, f.x0, f.y0 + f.h, 'black');
    doc.line(f.x0 + f.w, f.y0, f.x0 + f.w, f.y0 + f.h, 'black');
    const t = times.get(file);
    doc.text(f.x0 + f.w / 2, f.y0 + f.h + 18, t !== undefined ? `t = ${fmt(t)}` : file, 11);
  });
  doc.text(doc.width / 2, cell + 76, recipe.x_label ?? 're(alpha)', 12);
  const checksum = checksumColumns(data);
  doc.metadata({ data_sha256: checksum });
  return { svg: doc.render(), data, checksum };
}
