import { TaggedToken } from "./types";

const PUNCT: Record<string, string> = {
  ".": ".", "!": ".", "?": ".", ",": ",", ";": ":", ":": ":",
  "(": "-LRB-", ")": "-RRB-", '"': "''", "'": "''", "[": "-LSB-", "]": "-RSB-",
};

interface Entry { ptb: string; lemma?: string }

const LEXICON: Record<string, Entry> = {
  what: { ptb: "WP" }, which: { ptb: "WDT" }, who: { ptb: "WP" },
  whom: { ptb: "WP" }, whose: { ptb: "WP$" },
  when: { ptb: "WRB" }, where: { ptb: "WRB" }, why: { ptb: "WRB" },
  how: { ptb: "WRB" },
  the: { ptb: "DT" }, a: { ptb: "DT" }, an: { ptb: "DT" },
  this: { ptb: "DT" }, these: { ptb: "DT" }, those: { ptb: "DT" },
  that: { ptb: "IN" },
  is: { ptb: "VBZ", lemma: "be" }, are: { ptb: "VBP", lemma: "be" },
  was: { ptb: "VBD", lemma: "be" }, were: { ptb: "VBD", lemma: "be" },
  be: { ptb: "VB", lemma: "be" }, been: { ptb: "VBN", lemma: "be" },
  being: { ptb: "VBG", lemma: "be" }, am: { ptb: "VBP", lemma: "be" },
  do: { ptb: "VBP", lemma: "do" }, does: { ptb: "VBZ", lemma: "do" },
  did: { ptb: "VBD", lemma: "do" },
  have: { ptb: "VBP", lemma: "have" }, has: { ptb: "VBZ", lemma: "have" },
  had: { ptb: "VBD", lemma: "have" },
  will: { ptb: "MD" }, would: { ptb: "MD" }, can: { ptb: "MD" },
  could: { ptb: "MD" }, may: { ptb: "MD" }, might: { ptb: "MD" },
  must: { ptb: "MD" }, shall: { ptb: "MD" }, should: { ptb: "MD" },
  of: { ptb: "IN" }, in: { ptb: "IN" }, on: { ptb: "IN" }, at: { ptb: "IN" },
  by: { ptb: "IN" }, from: { ptb: "IN" }, with: { ptb: "IN" },
  about: { ptb: "IN" }, into: { ptb: "IN" }, over: { ptb: "IN" },
  under: { ptb: "IN" }, after: { ptb: "IN" }, before: { ptb: "IN" },
  between: { ptb: "IN" }, during: { ptb: "IN" }, near: { ptb: "IN" },
  for: { ptb: "IN" }, to: { ptb: "TO" },
  and: { ptb: "CC" }, or: { ptb: "CC" }, but: { ptb: "CC" }, nor: { ptb: "CC" },
  not: { ptb: "RB", lemma: "not" },
  i: { ptb: "PRP" }, you: { ptb: "PRP" }, he: { ptb: "PRP" },
  she: { ptb: "PRP" }, it: { ptb: "PRP" }, we: { ptb: "PRP" },
  they: { ptb: "PRP" }, me: { ptb: "PRP" }, him: { ptb: "PRP" },
  her: { ptb: "PRP" }, us: { ptb: "PRP" }, them: { ptb: "PRP" },
  my: { ptb: "PRP$" }, your: { ptb: "PRP$" }, his: { ptb: "PRP$" },
  its: { ptb: "PRP$" }, our: { ptb: "PRP$" }, their: { ptb: "PRP$" },
  there: { ptb: "EX" }, now: { ptb: "RB" }, very: { ptb: "RB" },
};

// Common verbs whose surface form would otherwise look like a plural noun
// or a bare noun.
const VERBS_3SG = new Set([
  "links", "guards", "stars", "premieres", "returns", "hails", "rests",
  "sits", "runs", "walks", "makes", "takes", "holds", "leads", "plays",
]);
const VERBS_BASE = new Set([
  "premiere", "direct", "craft", "star", "link", "guard", "give", "name",
  "find", "show", "tell", "list",
]);

const UPOS_BY_PTB: Record<string, string> = {
  NN: "NOUN", NNS: "NOUN", NNP: "PROPN", NNPS: "PROPN",
  VB: "VERB", VBD: "VERB", VBG: "VERB", VBN: "VERB", VBP: "VERB", VBZ: "VERB",
  MD: "AUX", JJ: "ADJ", JJR: "ADJ", JJS: "ADJ",
  RB: "ADV", RBR: "ADV", RBS: "ADV", WRB: "ADV",
  IN: "ADP", TO: "PART", DT: "DET", WDT: "DET", PDT: "DET", EX: "PRON",
  WP: "PRON", "WP$": "PRON", PRP: "PRON", "PRP$": "PRON",
  CC: "CCONJ", CD: "NUM", POS: "PART", UH: "INTJ", FW: "X",
};

const BE_HAVE_DO = new Set(["be", "have", "do"]);

function suffixTag(lower: string): Entry {
  if (/^\d+([.,]\d+)*$/.test(lower)) return { ptb: "CD" };
  if (lower.endsWith("ing") && lower.length > 4)
    return { ptb: "VBG", lemma: lower.replace(/ing$/, "") };
  if (lower.endsWith("ed") && lower.length > 3)
    return { ptb: "VBD", lemma: lower.replace(/ed$/, "") };
  if (lower.endsWith("ly") && lower.length > 3) return { ptb: "RB" };
  if (VERBS_3SG.has(lower)) return { ptb: "VBZ", lemma: lower.replace(/s$/, "") };
  if (VERBS_BASE.has(lower)) return { ptb: "VB" };
  if (lower.endsWith("s") && !lower.endsWith("ss") && lower.length > 3)
    return { ptb: "NNS", lemma: lower.replace(/s$/, "") };
  return { ptb: "NN" };
}

function uposFor(ptb: string, lemma: string, lower: string): string {
  if (ptb.startsWith("V") && BE_HAVE_DO.has(lemma)) return "AUX";
  if (lower === "not") return "PART";
  if (lower === "that") return "SCONJ";
  return UPOS_BY_PTB[ptb] ?? "X";
}

export function tagTokens(tokens: string[]): TaggedToken[] {
  return tokens.map((form, i) => {
    if (PUNCT[form] !== undefined) {
      return { form, lemma: form, ptb: PUNCT[form], upos: "PUNCT" };
    }
    const lower = form.toLowerCase();
    let entry = LEXICON[lower];
    if (entry === undefined) {
      const capitalized = /^[A-Z]/.test(form);
      if (capitalized && i > 0) {
        entry = { ptb: "NNP", lemma: form };
      } else {
        entry = suffixTag(lower);
        if (capitalized && entry.ptb === "NN") entry = { ptb: "NNP", lemma: form };
      }
    }
    const lemma = entry.lemma ?? lower;
    return { form, lemma, ptb: entry.ptb, upos: uposFor(entry.ptb, lemma, lower) };
  });
}
