import { TaggedToken } from "./types";

export type ChunkKind = "WH" | "NP" | "PP" | "VERB" | "AUX" | "CC" | "PUNCT" | "OTHER";

export interface Chunk {
  kind: ChunkKind;
  /** inclusive token span */
  start: number;
  end: number;
  /** index of the syntactic head token within the span */
  head: number;
  /** for PP chunks: index of the preposition */
  prep?: number;
}

const NOMINAL = new Set(["NN", "NNS", "NNP", "NNPS", "PRP"]);
const NP_INTERNAL = new Set(["DT", "PRP$", "JJ", "JJR", "JJS", "CD",
                             "NN", "NNS", "NNP", "NNPS", "PRP"]);
const WH = new Set(["WP", "WP$", "WDT", "WRB"]);

function npHead(tokens: TaggedToken[], start: number, end: number): number {
  let lastCd = -1;
  let head = -1;
  for (let i = start; i <= end; i++) {
    if (NOMINAL.has(tokens[i].ptb)) head = i;
    if (tokens[i].ptb === "CD") lastCd = i;
  }
  return head >= 0 ? head : lastCd >= 0 ? lastCd : end;
}

/** Greedy left-to-right chunking of a tagged sentence. */
export function chunk(tokens: TaggedToken[]): Chunk[] {
  const chunks: Chunk[] = [];
  let i = 0;
  while (i < tokens.length) {
    const t = tokens[i];
    if (t.upos === "PUNCT") {
      chunks.push({ kind: "PUNCT", start: i, end: i, head: i });
      i += 1;
    } else if (WH.has(t.ptb)) {
      // "what color" carries its nominal along
      let end = i;
      if ((t.ptb === "WP" || t.ptb === "WDT") && i + 1 < tokens.length &&
          NOMINAL.has(tokens[i + 1].ptb)) {
        end = i + 1;
      }
      chunks.push({ kind: "WH", start: i, end, head: end });
      i = end + 1;
    } else if (t.ptb === "IN" || t.ptb === "TO") {
      let j = i + 1;
      while (j < tokens.length && NP_INTERNAL.has(tokens[j].ptb)) j += 1;
      if (j > i + 1) {
        chunks.push({ kind: "PP", start: i, end: j - 1,
                      head: npHead(tokens, i + 1, j - 1), prep: i });
        i = j;
      } else {
        chunks.push({ kind: "OTHER", start: i, end: i, head: i });
        i += 1;
      }
    } else if (NP_INTERNAL.has(t.ptb)) {
      let j = i;
      while (j + 1 < tokens.length && NP_INTERNAL.has(tokens[j + 1].ptb)) j += 1;
      chunks.push({ kind: "NP", start: i, end: j, head: npHead(tokens, i, j) });
      i = j + 1;
    } else if (t.ptb === "MD" || (t.ptb.startsWith("V") && ["be", "have", "do"].includes(t.lemma))) {
      chunks.push({ kind: "AUX", start: i, end: i, head: i });
      i += 1;
    } else if (t.ptb.startsWith("V")) {
      chunks.push({ kind: "VERB", start: i, end: i, head: i });
      i += 1;
    } else if (t.ptb === "CC") {
      chunks.push({ kind: "CC", start: i, end: i, head: i });
      i += 1;
    } else {
      chunks.push({ kind: "OTHER", start: i, end: i, head: i });
      i += 1;
    }
  }
  return chunks;
}
