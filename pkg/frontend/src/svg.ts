/** Tiny deterministic SVG chart builder: linear/log scales, polylines, bars,
 * axes with tick labels. Output is a plain string, so identical inputs give
 * byte-identical images. */

export interface Scale {
  (v: number): number;
  ticks(): number[];
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const span = hi - lo || 1;
  const f = ((v: number) => outLo + ((v - lo) / span) * (outHi - outLo)) as Scale;
  f.ticks = () => {
    const step = niceStep(span / 5);
    const first = Math.ceil(lo / step) * step;
    const out: number[] = [];
    for (let t = first; t <= hi + 1e-9; t += step) out.push(round6(t));
    return out;
  };
  return f;
}

export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const span = lhi - llo || 1;
  const f = ((v: number) => outLo + ((Math.log10(v) - llo) / span) * (outHi - outLo)) as Scale;
  f.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(llo); e <= Math.floor(lhi + 1e-9); e++) out.push(10 ** e);
    return out.length >= 2 ? out : [lo, hi];
  };
  return f;
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const r = raw / mag;
  const nice = r < 1.5 ? 1 : r < 3.5 ? 2 : r < 7.5 ? 5 : 10;
  return nice * mag;
}

function round6(v: number): number {
  return Math.round(v * 1e6) / 1e6;
}

export function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0).replace("+", "");
  return String(round6(v));
}

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export class Chart {
  parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  text(x: number, y: number, s: string, opts = ""): void {
    this.parts.push(`<text x="${r1(x)}" y="${r1(y)}" font-size="11" ${opts}>${escapeXml(s)}</text>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#444", width = 1, dash = ""): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${r1(x1)}" y1="${r1(y1)}" x2="${r1(x2)}" y2="${r1(y2)}" stroke="${stroke}" stroke-width="${width}"${d}/>`,
    );
  }

  polyline(xs: number[], ys: number[], stroke: string, dash = ""): void {
    const pts = xs.map((x, i) => `${r1(x)},${r1(ys[i])}`).join(" ");
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(`<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.5"${d}/>`);
  }

  circle(x: number, y: number, rad: number, fill: string): void {
    this.parts.push(`<circle cx="${r1(x)}" cy="${r1(y)}" r="${rad}" fill="${fill}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(`<rect x="${r1(x)}" y="${r1(y)}" width="${r1(w)}" height="${r1(h)}" fill="${fill}"/>`);
  }

  /** Draw x/y axes for a plot area with tick labels. */
  axes(
    area: { x0: number; x1: number; y0: number; y1: number },
    xScale: Scale,
    yScale: Scale,
    xLabel: string,
    yLabel: string,
    side: "left" | "right" = "left",
  ): void {
    const { x0, x1, y0, y1 } = area;
    this.line(x0, y1, x1, y1);
    const axisX = side === "left" ? x0 : x1;
    this.line(axisX, y0, axisX, y1);
    for (const t of xScale.ticks()) {
      const px = xScale(t);
      if (px < x0 - 1 || px > x1 + 1) continue;
      this.line(px, y1, px, y1 + 4);
      this.text(px - 10, y1 + 16, fmt(t));
    }
    for (const t of yScale.ticks()) {
      const py = yScale(t);
      if (py < y0 - 1 || py > y1 + 1) continue;
      const dir = side === "left" ? -4 : 4;
      this.line(axisX, py, axisX + dir, py);
      const tx = side === "left" ? x0 - 38 : x1 + 6;
      this.text(tx, py + 4, fmt(t));
    }
    this.text((x0 + x1) / 2 - 20, y1 + 32, xLabel);
    const ly = (y0 + y1) / 2;
    const lx = side === "left" ? x0 - 44 : x1 + 40;
    this.text(lx, ly, yLabel, `transform="rotate(-90 ${r1(lx)} ${r1(ly)})"`);
  }

  legend(x: number, y: number, entries: { label: string; color: string; dash?: string }[]): void {
    entries.forEach((e, i) => {
      const yy = y + 14 * i;
      this.line(x, yy - 4, x + 18, yy - 4, e.color, 2, e.dash ?? "");
      this.text(x + 24, yy, e.label);
    });
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function r1(v: number): number {
  return Math.round(v * 10) / 10;
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
