import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync, existsSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { SchemaError, parseCsv, requireColumns } from "../src/csv.js";
import { FIGURE_KINDS, render } from "../src/figures.js";

const here = dirname(fileURLToPath(import.meta.url));
const FIXTURES: Record<string, string> = {
  rmse_phi: join(here, "fixtures", "rmse_sweep.csv"),
  accuracy_bars: join(here, "fixtures", "accuracy.csv"),
  accuracy_sweep: join(here, "fixtures", "accuracy.csv"),
  mse_phi: join(here, "fixtures", "phi_opt.csv"),
  mse_snr: join(here, "fixtures", "snr_bw.csv"),
};

function fixture(kind: string): string {
  return readFileSync(FIXTURES[kind], "utf-8");
}

describe("csv parsing", () => {
  it("parses header and rows", () => {
    const t = parseCsv("a,b\n1,2\n3,4\n");
    expect(t.columns).toEqual(["a", "b"]);
    expect(t.rows).toHaveLength(2);
    expect(t.rows[1].b).toBe("4");
  });

  it("rejects empty input", () => {
    expect(() => parseCsv("")).toThrow(SchemaError);
    expect(() => parseCsv("a,b\n")).toThrow(/header only/);
  });

  it("names missing columns", () => {
    const t = parseCsv("phi,mse_gs\n0.1,0.5\n");
    expect(() => requireColumns(t, ["phi", "mse_sum"])).toThrow(/mse_sum/);
  });
});

describe("figure renderers", () => {
  for (const kind of FIGURE_KINDS) {
    it(`renders ${kind} from its CSV`, () => {
      const svg = render(kind, fixture(kind));
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg).toContain("</svg>");
      expect(svg).toMatch(kind === "accuracy_bars" ? /<rect[^/]*fill="#/ : /polyline/);
    });

    it(`${kind} is deterministic`, () => {
      const a = render(kind, fixture(kind));
      const b = render(kind, fixture(kind));
      expect(a).toBe(b);
    });

    it(`${kind} fails with a named-column diagnostic on a corrupted CSV`, () => {
      const table = parseCsv(fixture(kind));
      const dropped = table.columns[table.columns.length - 1];
      const kept = table.columns.slice(0, -1);
      const corrupted = [
        kept.join(","),
        ...table.rows.map((r) => kept.map((c) => r[c]).join(",")),
      ].join("\n");
      expect(() => render(kind, corrupted)).toThrow(new RegExp(dropped));
    });
  }

  it("rmse_phi uses dual axes", () => {
    const svg = render("rmse_phi", fixture("rmse_phi"));
    expect(svg).toContain("RMSE V_gs (V)");
    expect(svg).toContain("RMSE V_ds (V)");
  });

  it("mse_phi marks the argmin", () => {
    const svg = render("mse_phi", fixture("mse_phi"));
    expect(svg).toContain("argmin phi");
  });

  it("empty CSV raises", () => {
    expect(() => render("mse_phi", "phi,mse_gs,mse_ds,mse_sum\n")).toThrow(/empty CSV/);
  });
});

describe("cli", () => {
  const cliPath = join(here, "..", "dist", "cli.js");

  it.skipIf(!existsSync(cliPath))("renders a figure end to end", () => {
    const out = join(mkdtempSync(join(tmpdir(), "plot-")), "fig.svg");
    execFileSync("node", [cliPath, "--kind", "mse_snr", "--in", FIXTURES.mse_snr, "--out", out]);
    expect(readFileSync(out, "utf-8")).toContain("</svg>");
  });

  it.skipIf(!existsSync(cliPath))("nonzero exit and no image on corrupted CSV", () => {
    const dir = mkdtempSync(join(tmpdir(), "plot-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "snr_db,bandwidth_hz\n-10,50000\n");
    const out = join(dir, "fig.svg");
    let code = 0;
    let stderr = "";
    try {
      execFileSync("node", [cliPath, "--kind", "mse_snr", "--in", bad, "--out", out], {
        stdio: ["ignore", "pipe", "pipe"],
      });
    } catch (err: any) {
      code = err.status;
      stderr = String(err.stderr);
    }
    expect(code).not.toBe(0);
    expect(stderr).toContain("mse_sum");
    expect(existsSync(out)).toBe(false);
  });

  it.skipIf(!existsSync(cliPath))("rejects unknown kinds", () => {
    let code = 0;
    try {
      execFileSync("node", [cliPath, "--kind", "pie", "--in", FIXTURES.mse_snr, "--out", "x.svg"], {
        stdio: "ignore",
      });
    } catch (err: any) {
      code = err.status;
    }
    expect(code).not.toBe(0);
  });
});
