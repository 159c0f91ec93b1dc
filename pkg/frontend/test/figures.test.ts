import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import { EmptySelectionError, MissingColumnError } from "../src/errors.js";
import { buildFig1, buildFig2 } from "../src/figures.js";

const DATA = join(__dirname, "..", "testdata");
const OPTS = { xAxis: "photons" as const, overlayClassical: false, overlayTmsv: false };

function load(name: string) {
  return parseCsv(readFileSync(join(DATA, name), "utf8"));
}

describe("fig1", () => {
  it("builds a monotone-decreasing curve from the shipped sweep", () => {
    const model = buildFig1(load("figure1.csv"), OPTS);
    const line = model.series[0]!.line!;
    expect(line.length).toBeGreaterThanOrEqual(10);
    for (let i = 1; i < line.length; i++) {
      expect(line[i]!.x).toBeGreaterThan(line[i - 1]!.x);
      expect(line[i]!.y).toBeLessThan(line[i - 1]!.y);
    }
    expect(model.series[0]!.points!.length).toBeGreaterThan(0);
  });

  it("adds overlay series on request", () => {
    const model = buildFig1(load("figure1.csv"), {
      ...OPTS,
      overlayClassical: true,
      overlayTmsv: true,
    });
    const labels = model.series.map((s) => s.label);
    expect(labels).toContain("classical floor");
    expect(labels).toContain("TMSV ceiling");
    const classical = model.series.find((s) => s.label === "classical floor")!.line!;
    const tmsv = model.series.find((s) => s.label === "TMSV ceiling")!.line!;
    const main = model.series[0]!.line!;
    expect(classical.length).toBe(main.length);
    for (let i = 1; i < classical.length; i++) {
      expect(classical[i]!.y).toBeLessThan(classical[i - 1]!.y);
      expect(tmsv[i]!.y).toBeLessThanOrEqual(tmsv[i - 1]!.y); // clamped at 1 early on
    }
    // the classical floor sits below the squeezed-vacuum ceiling throughout
    for (let i = 0; i < classical.length; i++) {
      expect(classical[i]!.y).toBeLessThanOrEqual(tmsv[i]!.y);
    }
  });

  it("supports the transmission axis", () => {
    const photons = buildFig1(load("figure1.csv"), OPTS);
    const transmissions = buildFig1(load("figure1.csv"), { ...OPTS, xAxis: "transmissions" });
    const xP = photons.series[0]!.line![3]!.x;
    const xT = transmissions.series[0]!.line![3]!.x;
    expect(xP).toBeCloseTo(xT * 5, 9); // d = 5 in the shipped sweep
  });

  it("raises the documented empty-selection error on a header-only csv", () => {
    const header = load("figure1.csv").columns.join(",") + "\r\n";
    expect(() => buildFig1(parseCsv(header), OPTS)).toThrow(EmptySelectionError);
    expect(() => buildFig1(parseCsv(header), OPTS)).toThrow(
      'no rows match the fig1 selection (rule="truncated_first_click", m="inf")',
    );
  });

  it("raises a missing-column error naming the column", () => {
    expect(() => buildFig1(parseCsv("rule,m\r\n"), OPTS)).toThrow(MissingColumnError);
    expect(() => buildFig1(parseCsv("rule,m\r\n"), OPTS)).toThrow(/analytic_energy_photons/);
  });
});

describe("fig2", () => {
  it("builds one bound curve per m, each monotone decreasing", () => {
    const model = buildFig2(load("figure2.csv"), OPTS);
    const bounds = model.series.filter((s) => s.label.endsWith("bound"));
    expect(bounds.map((s) => s.label)).toEqual(["m=10 bound", "m=100 bound", "m=1000 bound"]);
    for (const series of bounds) {
      const line = series.line!;
      for (let i = 1; i < line.length; i++) {
        expect(line[i]!.y).toBeLessThan(line[i - 1]!.y);
      }
    }
  });

  it("orders curves by m pointwise (m=1000 below m=10 at every shared x)", () => {
    const model = buildFig2(load("figure2.csv"), OPTS);
    const m10 = model.series.find((s) => s.label === "m=10 bound")!.line!;
    const m1000 = model.series.find((s) => s.label === "m=1000 bound")!.line!;
    expect(m10.length).toBe(m1000.length);
    for (let i = 0; i < m10.length; i++) {
      expect(m1000[i]!.x).toBeCloseTo(m10[i]!.x, 9);
      expect(m1000[i]!.y).toBeLessThan(m10[i]!.y);
    }
  });

  it("skips zero-count MC estimates on the log axis", () => {
    const model = buildFig2(load("figure2.csv"), OPTS);
    const mc = model.series.filter((s) => s.label.endsWith("MC"));
    expect(mc.length).toBeGreaterThan(0);
    for (const series of mc) {
      for (const point of series.points!) {
        expect(point.y).toBeGreaterThan(0);
        expect(point.ciHigh).toBeGreaterThanOrEqual(point.y);
      }
    }
  });

  it("renders bounds-only sweeps without MC series", () => {
    const model = buildFig2(load("figure2_bounds.csv"), OPTS);
    expect(model.series.some((s) => s.label.endsWith("bound"))).toBe(true);
    expect(model.series.some((s) => s.label.endsWith("MC"))).toBe(false);
  });

  it("raises the documented empty-selection error when only infinite-m rows exist", () => {
    const table = load("figure1.csv"); // all rows have m = inf
    expect(() => buildFig2(table, OPTS)).toThrow(EmptySelectionError);
  });
});
