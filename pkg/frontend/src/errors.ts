/** Errors surfaced to CLI users; messages are part of the documented contract. */

export class MissingColumnError extends Error {
  constructor(public readonly column: string) {
    super(`missing column: ${column}`);
    this.name = "MissingColumnError";
  }
}

export class EmptySelectionError extends Error {
  constructor(figure: string, filter: string) {
    super(`no rows match the ${figure} selection (${filter})`);
    this.name = "EmptySelectionError";
  }
}

export class CsvFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CsvFormatError";
  }
}
