import { Chunk, chunk } from "./chunks";
import { DepToken, TaggedToken } from "./types";

const UNSET = -1;
const ROOT = -2;

/**
 * Deterministic head assignment tuned for question-shaped sentences.
 *
 * The root is the wh-phrase head for copular questions, otherwise the first
 * main verb, otherwise the first nominal head. Noun-phrase internals attach
 * to their chunk head; prepositional phrases attach to the nearest
 * preceding nominal; "who/that + verb" after a noun opens a relative
 * clause whose following noun phrase is the clause object. Anything
 * unclaimed falls back to the root.
 */
export function parseDependencies(tagged: TaggedToken[]): DepToken[] {
  const n = tagged.length;
  const head = new Array<number>(n).fill(UNSET);
  const rel = new Array<string>(n).fill("dep");
  const chunks = chunk(tagged);

  const set = (i: number, h: number, r: string) => {
    if (head[i] === UNSET) {
      head[i] = h;
      rel[i] = r;
    }
  };

  const npInternal = (c: Chunk) => {
    for (let i = c.start; i <= c.end; i++) {
      if (i === c.head || head[i] !== UNSET) continue;
      const t = tagged[i].ptb;
      if (t === "DT") set(i, c.head, "det");
      else if (t === "PRP$") set(i, c.head, "nmod:poss");
      else if (t === "JJ" || t === "JJR" || t === "JJS") set(i, c.head, "amod");
      else if (t === "CD") set(i, c.head, "nummod");
      else set(i, c.head, "compound");
    }
  };

  // pick the root
  let rootIdx: number;
  let rootKind: "copular" | "verbal" | "nominal";
  const first = chunks[0];
  const auxAfterWh = first !== undefined && first.kind === "WH" &&
    chunks.length > 1 && chunks[1].kind === "AUX" &&
    tagged[chunks[1].head].lemma === "be";
  if (auxAfterWh) {
    rootIdx = first.head;
    rootKind = "copular";
  } else {
    const mainVerb = chunks.find((c) => c.kind === "VERB");
    const anyAux = chunks.find((c) => c.kind === "AUX");
    if (mainVerb !== undefined) {
      rootIdx = mainVerb.head;
      rootKind = "verbal";
    } else if (anyAux !== undefined) {
      rootIdx = anyAux.head;
      rootKind = "verbal";
    } else {
      const firstNp = chunks.find((c) => c.kind === "NP" || c.kind === "WH");
      rootIdx = firstNp !== undefined ? firstNp.head : 0;
      rootKind = "nominal";
    }
  }
  head[rootIdx] = ROOT;
  rel[rootIdx] = "root";

  // wh chunk internals ("what color": the wh word modifies the noun)
  if (first !== undefined && first.kind === "WH" && first.end > first.start) {
    set(first.start, first.head, "det");
  }

  let lastNominal = rootKind === "copular" ? rootIdx : UNSET;
  let subjectDone = false;

  for (let ci = 0; ci < chunks.length; ci++) {
    const c = chunks[ci];
    const h = c.head;
    switch (c.kind) {
      case "WH": {
        if (h === rootIdx) break;
        const next = chunks[ci + 1];
        const prev = chunks[ci - 1];
        if (next !== undefined && next.kind === "VERB" && prev !== undefined &&
            (prev.kind === "NP" || prev.kind === "PP")) {
          set(next.head, prev.head, "acl:relcl");
          set(h, next.head, "nsubj");
        } else if (ci === 0 && rootKind === "verbal") {
          set(h, rootIdx, tagged[h].ptb === "WRB" ? "advmod" : "nsubj");
        } else {
          set(h, rootIdx, "advmod");
        }
        break;
      }
      case "NP": {
        npInternal(c);
        if (h === rootIdx) {
          lastNominal = h;
          break;
        }
        const prev = chunks[ci - 1];
        if (prev !== undefined && (prev.kind === "VERB" ||
            (prev.kind === "AUX" && rootKind !== "copular"))) {
          set(h, prev.head, "obj");
        } else if (rootKind === "copular" && !subjectDone) {
          set(h, rootIdx, "nsubj");
          subjectDone = true;
        } else if (rootKind === "verbal" && c.end < rootIdx && !subjectDone) {
          set(h, rootIdx, "nsubj");
          subjectDone = true;
        } else if (prev !== undefined && prev.kind === "CC" && lastNominal !== UNSET) {
          set(h, lastNominal, "conj");
        } else {
          set(h, rootIdx, "dep");
        }
        lastNominal = h;
        break;
      }
      case "PP": {
        if (c.prep !== undefined) set(c.prep, h, "case");
        npInternal(c);
        if (lastNominal !== UNSET && lastNominal !== h) set(h, lastNominal, "nmod");
        else set(h, rootIdx, "obl");
        lastNominal = h;
        break;
      }
      case "AUX": {
        if (h === rootIdx) break;
        set(h, rootIdx, rootKind === "copular" ? "cop" : "aux");
        break;
      }
      case "VERB":
        // relative-clause verbs are attached by the WH case
        if (h !== rootIdx) set(h, rootIdx, "dep");
        break;
      case "CC":
        set(h, rootIdx, "cc");
        break;
      case "PUNCT":
        set(h, rootIdx, "punct");
        break;
      default:
        set(h, rootIdx, tagged[h].ptb.startsWith("RB") ? "advmod" : "dep");
    }
  }

  for (let i = 0; i < n; i++) {
    if (head[i] === UNSET) head[i] = rootIdx;
  }

  const out: DepToken[] = tagged.map((t, i) => ({
    ...t,
    index: i + 1,
    head: head[i] === ROOT ? 0 : head[i] + 1,
    deprel: rel[i],
  }));
  validate(out);
  return out;
}

function validate(tokens: DepToken[]): void {
  const n = tokens.length;
  const roots = tokens.filter((t) => t.head === 0);
  if (roots.length !== 1) {
    throw new Error(`expected exactly one root, found ${roots.length}`);
  }
  for (const t of tokens) {
    if (t.head < 0 || t.head > n || t.head === t.index) {
      throw new Error(`token ${t.index} has invalid head ${t.head}`);
    }
  }
  for (const t of tokens) {
    let cur = t.head;
    let steps = 0;
    while (cur !== 0) {
      cur = tokens[cur - 1].head;
      steps += 1;
      if (steps > n) throw new Error("head links contain a cycle");
    }
  }
}
