import { EntitySpan, TaggedToken } from "./types";

const MONTHS = new Set([
  "january", "february", "march", "april", "may", "june", "july", "august",
  "september", "october", "november", "december",
]);

const GIVEN_NAMES = new Set([
  "john", "james", "mary", "don", "donald", "lino", "wallace", "gordon",
  "raoul", "sidney", "virgil", "ramin", "paul", "anna", "peter", "maria",
]);

const LOC_SUFFIXES = ["land", "ton", "ville", "burg", "shire", "moor",
                      "wick", "holt", "ford", "dale", "by"];

function isYear(form: string): boolean {
  return /^\d{4}$/.test(form) && +form >= 1000 && +form <= 2999;
}

/**
 * Entity spans over the tagged tokens: proper-noun runs (absorbing single
 * "of"/"the" linkers), month-day-year patterns, and bare years. Offsets are
 * [start, end) over the token sequence.
 */
export function extractEntities(tokens: TaggedToken[]): EntitySpan[] {
  const spans: EntitySpan[] = [];
  const taken = new Array<boolean>(tokens.length).fill(false);

  // date patterns first: Month [CD[,] CD] | Month CD | bare year
  for (let i = 0; i < tokens.length; i++) {
    if (!MONTHS.has(tokens[i].form.toLowerCase())) continue;
    let end = i + 1;
    while (end < tokens.length &&
           (tokens[end].ptb === "CD" || tokens[end].form === ",") &&
           end - i <= 4) {
      end += 1;
    }
    while (end > i + 1 && tokens[end - 1].form === ",") end -= 1;
    if (end > i + 1) {
      spans.push(makeSpan(tokens, i, end, "DATE"));
      for (let k = i; k < end; k++) taken[k] = true;
    }
  }
  for (let i = 0; i < tokens.length; i++) {
    if (!taken[i] && isYear(tokens[i].form)) {
      spans.push(makeSpan(tokens, i, i + 1, "DATE"));
      taken[i] = true;
    }
  }

  // proper-noun runs
  let i = 0;
  while (i < tokens.length) {
    if (taken[i] || !tokens[i].ptb.startsWith("NNP")) {
      i += 1;
      continue;
    }
    let end = i + 1;
    while (end < tokens.length) {
      if (!taken[end] && tokens[end].ptb.startsWith("NNP")) {
        end += 1;
      } else if (["of", "the"].includes(tokens[end].form.toLowerCase()) &&
                 end + 1 < tokens.length && !taken[end + 1] &&
                 tokens[end + 1].ptb.startsWith("NNP")) {
        end += 2;
      } else {
        break;
      }
    }
    spans.push(makeSpan(tokens, i, end, classify(tokens, i, end)));
    for (let k = i; k < end; k++) taken[k] = true;
    i = end;
  }

  spans.sort((a, b) => a.start - b.start);
  return spans;
}

function classify(tokens: TaggedToken[], start: number,
                  end: number): EntitySpan["type"] {
  const first = tokens[start].form.toLowerCase();
  if (GIVEN_NAMES.has(first)) return "PERSON";
  const last = tokens[end - 1].form.toLowerCase();
  if (LOC_SUFFIXES.some((suffix) => last.endsWith(suffix) && last.length > suffix.length)) {
    return "LOC";
  }
  return "OTHER";
}

function makeSpan(tokens: TaggedToken[], start: number, end: number,
                  type: EntitySpan["type"]): EntitySpan {
  let text = "";
  for (let i = start; i < end; i++) {
    const form = tokens[i].form;
    if (text === "") text = form;
    else if (form === ",") text += form;
    else text += ` ${form}`;
  }
  return { text, type, start, end };
}
