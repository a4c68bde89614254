// Minimal deterministic SVG assembly: fixed canvas, no timestamps, fixed
// formatting, so identical inputs give byte-identical files.

export interface Extent {
  lo: number;
  hi: number;
}

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return 'NaN';
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return v.toExponential(3);
  return String(Math.round(v * 1e6) / 1e6);
}

export class SvgDoc {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.add(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, dash = ''): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : '';
    this.add(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="1"${d}/>`,
    );
  }

  polyline(points: [number, number][], stroke: string): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(' ');
    this.add(`<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.5"/>`);
  }

  text(x: number, y: number, s: string, size = 11, anchor = 'middle', rotate = 0): void {
    const tr = rotate ? ` transform="rotate(${rotate} ${fmt(x)} ${fmt(y)})"` : '';
    this.add(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-family="Helvetica,Arial,sans-serif" ` +
        `font-size="${size}" text-anchor="${anchor}"${tr}>${escapeXml(s)}</text>`,
    );
  }

  metadata(payload: Record<string, string>): void {
    const body = Object.entries(payload)
      .map(([k, v]) => `<meta key="${escapeXml(k)}" value="${escapeXml(v)}"/>`)
      .join('');
    this.add(`<metadata>${body}</metadata>`);
  }

  render(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
      `viewBox="0 0 ${this.width} ${this.height}">` +
      `<rect width="${this.width}" height="${this.height}" fill="white"/>` +
      this.parts.join('') +
      '</svg>'
    );
  }
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export interface Frame {
  x0: number;
  y0: number;
  w: number;
  h: number;
  xExt: Extent;
  yExt: Extent;
}

export function scaleX(f: Frame, v: number): number {
  return f.x0 + ((v - f.xExt.lo) / (f.xExt.hi - f.xExt.lo || 1)) * f.w;
}

export function scaleY(f: Frame, v: number): number {
  return f.y0 + f.h - ((v - f.yExt.lo) / (f.yExt.hi - f.yExt.lo || 1)) * f.h;
}

export function drawAxes(doc: SvgDoc, f: Frame, xLabel: string, yLabel: string, nTicks = 5): void {
  doc.line(f.x0, f.y0 + f.h, f.x0 + f.w, f.y0 + f.h, 'black');
  doc.line(f.x0, f.y0, f.x0, f.y0 + f.h, 'black');
  for (let k = 0; k < nTicks; k++) {
    const tx = f.xExt.lo + ((f.xExt.hi - f.xExt.lo) * k) / (nTicks - 1);
    const ty = f.yExt.lo + ((f.yExt.hi - f.yExt.lo) * k) / (nTicks - 1);
    const px = scaleX(f, tx);
    const py = scaleY(f, ty);
    doc.line(px, f.y0 + f.h, px, f.y0 + f.h + 4, 'black');
    doc.text(px, f.y0 + f.h + 16, fmt(tx), 10);
    doc.line(f.x0 - 4, py, f.x0, py, 'black');
    doc.text(f.x0 - 8, py + 3, fmt(ty), 10, 'end');
  }
  doc.text(f.x0 + f.w / 2, f.y0 + f.h + 32, xLabel, 12);
  doc.text(f.x0 - 44, f.y0 + f.h / 2, yLabel, 12, 'middle', -90);
}

export function drawColorbar(doc: SvgDoc, x: number, y: number, h: number, ext: Extent,
                             colorFor: (v: number, lo: number, hi: number) => string,
                             label: string): void {
  const n = 48;
  for (let k = 0; k < n; k++) {
    const v = ext.lo + ((ext.hi - ext.lo) * k) / (n - 1);
    doc.rect(x, y + h - ((k + 1) * h) / n, 14, h / n + 0.5, colorFor(v, ext.lo, ext.hi));
  }
  doc.text(x + 7, y - 8, label, 10);
  doc.text(x + 20, y + 6, fmt(ext.hi), 9, 'start');
  doc.text(x + 20, y + h, fmt(ext.lo), 9, 'start');
}
