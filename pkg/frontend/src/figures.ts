/** The five figure renderers, one per experiment CSV. */
import { Table, numeric, parseCsv, requireColumns } from "./csv.js";
import { Chart, PALETTE, Scale, fmt, linearScale, logScale } from "./svg.js";

export const FIGURE_KINDS = [
  "rmse_phi",
  "accuracy_bars",
  "accuracy_sweep",
  "mse_phi",
  "mse_snr",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

const AREA = { x0: 64, x1: 560, y0: 36, y1: 330 };
const SIZE = { w: 720, h: 380 };

function extent(values: number[], padFrac = 0.05): [number, number] {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const pad = (hi - lo || Math.abs(hi) || 1) * padFrac;
  return [lo - pad, hi + pad];
}

function positiveExtent(values: number[]): [number, number] {
  const pos = values.filter((v) => v > 0);
  const lo = pos.length ? Math.min(...pos) : 1e-6;
  const hi = pos.length ? Math.max(...pos) : 1;
  return [lo / 1.5, hi * 1.5];
}

/** Dual-axis RMSE vs phi: V_gs on the left axis, V_ds on the right. */
export function renderRmsePhi(table: Table): string {
  requireColumns(table, [
    "phi",
    "rmse_vgs_before",
    "rmse_vds_before",
    "rmse_vgs_after",
    "rmse_vds_after",
  ]);
  const phi = numeric(table, "phi");
  const gsB = numeric(table, "rmse_vgs_before");
  const gsA = numeric(table, "rmse_vgs_after");
  const dsB = numeric(table, "rmse_vds_before");
  const dsA = numeric(table, "rmse_vds_after");

  const c = new Chart(SIZE.w, SIZE.h);
  const xs = linearScale(...extent(phi, 0.02), AREA.x0, AREA.x1);
  const yg = linearScale(0, Math.max(...gsB, ...gsA) * 1.1 || 1, AREA.y1, AREA.y0);
  const yd = linearScale(0, Math.max(...dsB, ...dsA) * 1.1 || 1, AREA.y1, AREA.y0);
  c.axes(AREA, xs, yg, "phi (V)", "RMSE V_gs (V)", "left");
  c.axes(AREA, xs, yd, "", "RMSE V_ds (V)", "right");
  const px = phi.map(xs);
  c.polyline(px, gsB.map(yg), PALETTE[0], "5,3");
  c.polyline(px, gsA.map(yg), PALETTE[0]);
  c.polyline(px, dsB.map(yd), PALETTE[1], "5,3");
  c.polyline(px, dsA.map(yd), PALETTE[1]);
  c.legend(AREA.x0 + 10, AREA.y0 + 12, [
    { label: "V_gs before correction", color: PALETTE[0], dash: "5,3" },
    { label: "V_gs after correction", color: PALETTE[0] },
    { label: "V_ds before correction", color: PALETTE[1], dash: "5,3" },
    { label: "V_ds after correction", color: PALETTE[1] },
  ]);
  c.text(AREA.x0, 18, "Decode RMSE vs quantization step");
  return c.render();
}

/** Per-distribution accuracy bars for both signals at one operating point. */
export function renderAccuracyBars(table: Table): string {
  requireColumns(table, ["param", "value", "kind", "signal", "accuracy"]);
  const first = table.rows[0];
  const rows = table.rows.filter(
    (r) => r.param === first.param && r.value === first.value,
  );
  const kinds = [...new Set(rows.map((r) => r.kind))];
  const acc = (kind: string, signal: string): number => {
    const row = rows.find((r) => r.kind === kind && r.signal === signal);
    return row ? Number(row.accuracy) : 0;
  };

  const c = new Chart(SIZE.w, SIZE.h);
  const xs = linearScale(0, kinds.length, AREA.x0, AREA.x1);
  const ys = linearScale(0, 1.05, AREA.y1, AREA.y0);
  c.axes(AREA, xs, ys, "", "accuracy", "left");
  kinds.forEach((kind, i) => {
    const w = (xs(1) - xs(0)) * 0.32;
    c.rect(xs(i + 0.12), ys(acc(kind, "x1")), w, AREA.y1 - ys(acc(kind, "x1")), PALETTE[0]);
    c.rect(xs(i + 0.52), ys(acc(kind, "x2")), w, AREA.y1 - ys(acc(kind, "x2")), PALETTE[1]);
    c.text(xs(i + 0.1), AREA.y1 + 16, kind);
  });
  c.legend(AREA.x1 - 120, AREA.y0 + 12, [
    { label: "x1 (V_ds)", color: PALETTE[0] },
    { label: "x2 (V_gs)", color: PALETTE[1] },
  ]);
  c.text(
    AREA.x0,
    18,
    `Identification accuracy per source (${first.param} = ${first.value})`,
  );
  return c.render();
}

/** Accuracy versus each swept parameter, one panel per parameter. */
export function renderAccuracySweep(table: Table): string {
  requireColumns(table, ["param", "value", "kind", "signal", "accuracy"]);
  const params = [...new Set(table.rows.map((r) => r.param))];
  const kinds = [...new Set(table.rows.map((r) => r.kind))];
  const width = 300 * params.length + 120;
  const c = new Chart(width, 360);
  params.forEach((param, p) => {
    const area = { x0: 64 + 300 * p, x1: 300 * p + 320, y0: 40, y1: 300 };
    const rows = table.rows.filter((r) => r.param === param && r.signal === "x1");
    const values = [...new Set(rows.map((r) => Number(r.value)))].sort((a, b) => a - b);
    const xs = linearScale(...extent(values, 0.03), area.x0, area.x1);
    const ys = linearScale(0, 1.05, area.y1, area.y0);
    c.axes(area, xs, ys, axisLabel(param), p === 0 ? "x1 accuracy" : "", "left");
    kinds.forEach((kind, k) => {
      const series = values.map((v) => {
        const row = rows.find((r) => Number(r.value) === v && r.kind === kind);
        return row ? Number(row.accuracy) : 0;
      });
      c.polyline(values.map(xs), series.map(ys), PALETTE[k % PALETTE.length]);
    });
  });
  c.legend(width - 110, 50, kinds.map((kind, k) => ({ label: kind, color: PALETTE[k % PALETTE.length] })));
  c.text(64, 18, "Identification accuracy vs swept parameter");
  return c.render();
}

function axisLabel(param: string): string {
  if (param === "phi") return "phi (V)";
  if (param === "snr_db") return "SNR (dB)";
  if (param === "bandwidth_hz") return "bandwidth (Hz)";
  return param;
}

/** Three-series MSE vs phi with the argmin of the mean marked. */
export function renderMsePhi(table: Table): string {
  requireColumns(table, ["phi", "mse_gs", "mse_ds", "mse_sum"]);
  const phi = numeric(table, "phi");
  const gs = numeric(table, "mse_gs");
  const ds = numeric(table, "mse_ds");
  const sum = numeric(table, "mse_sum");

  const c = new Chart(SIZE.w, SIZE.h);
  const xs = linearScale(...extent(phi, 0.02), AREA.x0, AREA.x1);
  const ys = logScale(...positiveExtent([...gs, ...ds, ...sum]), AREA.y1, AREA.y0);
  c.axes(AREA, xs, ys, "phi (V)", "MSE (V^2)", "left");
  const series: [number[], string, string][] = [
    [gs, PALETTE[0], "MSE V_gs"],
    [ds, PALETTE[1], "MSE V_ds"],
    [sum, PALETTE[2], "mean of both"],
  ];
  for (const [values, color] of series) {
    c.polyline(phi.map(xs), values.map((v) => ys(Math.max(v, 1e-12))), color);
  }
  const k = sum.indexOf(Math.min(...sum));
  c.circle(xs(phi[k]), ys(Math.max(sum[k], 1e-12)), 5, PALETTE[2]);
  c.text(xs(phi[k]) + 8, ys(Math.max(sum[k], 1e-12)) - 6, `argmin phi = ${fmt(phi[k])}`);
  c.legend(AREA.x1 - 140, AREA.y0 + 12, series.map(([, color, label]) => ({ label, color })));
  c.text(AREA.x0, 18, "Block-averaged MSE vs quantization step");
  return c.render();
}

/** MSE vs SNR, one series per bandwidth. */
export function renderMseSnr(table: Table): string {
  requireColumns(table, ["snr_db", "bandwidth_hz", "mse_sum"]);
  const snr = numeric(table, "snr_db");
  const bw = numeric(table, "bandwidth_hz");
  const mse = numeric(table, "mse_sum");
  const bws = [...new Set(bw)].sort((a, b) => a - b);

  const c = new Chart(SIZE.w, SIZE.h);
  const xs = linearScale(...extent(snr, 0.02), AREA.x0, AREA.x1);
  const ys = logScale(...positiveExtent(mse), AREA.y1, AREA.y0);
  c.axes(AREA, xs, ys, "SNR (dB)", "MSE (V^2)", "left");
  bws.forEach((b, i) => {
    const pts = snr
      .map((s, j) => ({ s, m: mse[j], b: bw[j] }))
      .filter((p) => p.b === b)
      .sort((p, q) => p.s - q.s);
    c.polyline(
      pts.map((p) => xs(p.s)),
      pts.map((p) => ys(Math.max(p.m, 1e-12))),
      PALETTE[i % PALETTE.length],
    );
  });
  c.legend(
    AREA.x1 - 150,
    AREA.y0 + 12,
    bws.map((b, i) => ({ label: `BW = ${fmt(b / 1e3)} kHz`, color: PALETTE[i % PALETTE.length] })),
  );
  c.text(AREA.x0, 18, "Mean MSE vs SNR per bandwidth");
  return c.render();
}

const RENDERERS: Record<FigureKind, (t: Table) => string> = {
  rmse_phi: renderRmsePhi,
  accuracy_bars: renderAccuracyBars,
  accuracy_sweep: renderAccuracySweep,
  mse_phi: renderMsePhi,
  mse_snr: renderMseSnr,
};

/** Render one figure kind from CSV text to SVG text. */
export function render(kind: FigureKind, csvText: string): string {
  const renderer = RENDERERS[kind];
  if (!renderer) {
    throw new Error(`unknown figure kind: ${kind}; choose from ${FIGURE_KINDS.join(", ")}`);
  }
  return renderer(parseCsv(csvText));
}
