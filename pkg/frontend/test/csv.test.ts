import { describe, expect, it } from "vitest";

import { cellNumber, parseCsv, requireColumns } from "../src/csv.js";
import { CsvFormatError, MissingColumnError } from "../src/errors.js";

describe("parseCsv", () => {
  it("parses CRLF records with quoted fields", () => {
    const table = parseCsv('a,b,c\r\n1,"x,y",3\r\n4,"he said ""hi""",6\r\n');
    expect(table.columns).toEqual(["a", "b", "c"]);
    expect(table.rows).toEqual([
      { a: "1", b: "x,y", c: "3" },
      { a: "4", b: 'he said "hi"', c: "6" },
    ]);
  });

  it("parses bare LF as well", () => {
    const table = parseCsv("a,b\n1,2\n");
    expect(table.rows).toEqual([{ a: "1", b: "2" }]);
  });

  it("header-only file has zero rows", () => {
    const table = parseCsv("a,b,c\r\n");
    expect(table.columns).toEqual(["a", "b", "c"]);
    expect(table.rows).toEqual([]);
  });

  it("rejects ragged records", () => {
    expect(() => parseCsv("a,b\r\n1,2,3\r\n")).toThrow(CsvFormatError);
  });

  it("rejects unterminated quotes", () => {
    expect(() => parseCsv('a\r\n"unclosed\r\n')).toThrow(CsvFormatError);
  });
});

describe("requireColumns", () => {
  it("names the missing column", () => {
    const table = parseCsv("a,b\r\n");
    expect(() => requireColumns(table, ["a", "zork"])).toThrow(MissingColumnError);
    expect(() => requireColumns(table, ["zork"])).toThrow("missing column: zork");
  });
});

describe("cellNumber", () => {
  it("handles numbers, empties and inf", () => {
    const row = { x: "0.25", y: "", z: "inf" };
    expect(cellNumber(row, "x")).toBe(0.25);
    expect(cellNumber(row, "y")).toBeUndefined();
    expect(cellNumber(row, "z")).toBe(Infinity);
  });

  it("rejects junk", () => {
    expect(() => cellNumber({ x: "pear" }, "x")).toThrow(CsvFormatError);
  });
});
