/** Minimal RFC-4180 reader for the sweep tables (quoted fields, CRLF). */

import { CsvFormatError, MissingColumnError } from "./errors.js";

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string): Table {
  const records: string[][] = [];
  let field = "";
  let record: string[] = [];
  let inQuotes = false;
  let i = 0;
  const pushField = () => {
    record.push(field);
    field = "";
  };
  const pushRecord = () => {
    pushField();
    records.push(record);
    record = [];
  };
  while (i < text.length) {
    const ch = text[i]!;
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && field === "") {
      inQuotes = true;
      i += 1;
    } else if (ch === ",") {
      pushField();
      i += 1;
    } else if (ch === "\r" && text[i + 1] === "\n") {
      pushRecord();
      i += 2;
    } else if (ch === "\n") {
      pushRecord();
      i += 1;
    } else {
      field += ch;
      i += 1;
    }
  }
  if (inQuotes) throw new CsvFormatError("unterminated quoted field");
  if (field !== "" || record.length > 0) pushRecord();

  if (records.length === 0) throw new CsvFormatError("empty file: no header record");
  const columns = records[0]!;
  const rows: Record<string, string>[] = [];
  for (let r = 1; r < records.length; r++) {
    const rec = records[r]!;
    if (rec.length === 1 && rec[0] === "") continue; // trailing blank line
    if (rec.length !== columns.length) {
      throw new CsvFormatError(
        `record ${r + 1} has ${rec.length} fields, header has ${columns.length}`,
      );
    }
    const row: Record<string, string> = {};
    columns.forEach((name, c) => {
      row[name] = rec[c]!;
    });
    rows.push(row);
  }
  return { columns, rows };
}

export function requireColumns(table: Table, names: string[]): void {
  for (const name of names) {
    if (!table.columns.includes(name)) throw new MissingColumnError(name);
  }
}

/** Numeric cell access: empty cells become undefined, junk throws. */
export function cellNumber(row: Record<string, string>, name: string): number | undefined {
  const raw = row[name];
  if (raw === undefined || raw === "") return undefined;
  if (raw === "inf") return Infinity;
  const value = Number(raw);
  if (Number.isNaN(value)) throw new CsvFormatError(`column ${name}: not a number: ${raw}`);
  return value;
}
