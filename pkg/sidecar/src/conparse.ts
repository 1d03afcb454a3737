import { Chunk, chunk } from "./chunks";
import { TaggedToken, TreeNode } from "./types";

const node = (label: string, children: TreeNode[]): TreeNode => ({ label, children });
const leaf = (t: TaggedToken): TreeNode => ({ label: t.ptb, leaf: escapeForm(t.form) });

function escapeForm(form: string): string {
  return form.replace(/\(/g, "-LRB-").replace(/\)/g, "-RRB-");
}

function leavesOf(tokens: TaggedToken[], c: Chunk): TreeNode[] {
  const out: TreeNode[] = [];
  for (let i = c.start; i <= c.end; i++) out.push(leaf(tokens[i]));
  return out;
}

/**
 * Chunk-based constituency: noun phrases absorb their following
 * prepositional phrases right-nested, a "who/that + verb" sequence opens an
 * SBAR relative clause, and the sentence frame is picked from the leading
 * chunks (wh-copular question, declarative, imperative, fragment).
 */
export function parseConstituency(tokens: TaggedToken[]): TreeNode {
  const chunks = chunk(tokens);
  const tree = buildRoot(tokens, chunks);
  checkLeaves(tokens, tree);
  return tree;
}

interface Cursor { i: number }

/** Noun phrase starting at cursor: base NP plus nested PPs / relative clause. */
function nounPhrase(tokens: TaggedToken[], chunks: Chunk[], cur: Cursor): TreeNode {
  const parts: { prep?: TaggedToken; base: TreeNode }[] = [];
  let relcl: TreeNode | null = null;

  const firstChunk = chunks[cur.i];
  parts.push({ base: node("NP", leavesOf(tokens, firstChunk)) });
  cur.i += 1;

  while (cur.i < chunks.length) {
    const c = chunks[cur.i];
    if (c.kind === "PP" && c.prep !== undefined) {
      const inner = node("NP", leavesOf(tokens, {
        ...c, start: c.prep + 1,
      }));
      parts.push({ prep: tokens[c.prep], base: inner });
      cur.i += 1;
    } else if (c.kind === "WH" && chunks[cur.i + 1] !== undefined &&
               chunks[cur.i + 1].kind === "VERB") {
      const whLeaves = leavesOf(tokens, c);
      const verbChunk = chunks[cur.i + 1];
      cur.i += 2;
      const vpChildren: TreeNode[] = [leaf(tokens[verbChunk.head])];
      if (cur.i < chunks.length && chunks[cur.i].kind === "NP") {
        vpChildren.push(nounPhrase(tokens, chunks, cur));
      }
      relcl = node("SBAR", [node("WHNP", whLeaves),
                            node("S", [node("VP", vpChildren)])]);
      break;
    } else {
      break;
    }
  }

  // right-nest: innermost nominal group first
  let acc = parts[parts.length - 1].base;
  if (relcl !== null) {
    acc = node("NP", [acc, relcl]);
  }
  for (let i = parts.length - 2; i >= 0; i--) {
    const prep = parts[i + 1].prep!;
    acc = node("NP", [parts[i].base, node("PP", [leaf(prep), acc])]);
  }
  return acc;
}

function whPhrase(tokens: TaggedToken[], c: Chunk): TreeNode {
  const label = tokens[c.start].ptb === "WRB" ? "WHADVP" : "WHNP";
  return node(label, leavesOf(tokens, c));
}

function restConstituents(tokens: TaggedToken[], chunks: Chunk[],
                          cur: Cursor): TreeNode[] {
  const out: TreeNode[] = [];
  while (cur.i < chunks.length) {
    const c = chunks[cur.i];
    if (c.kind === "NP") {
      out.push(nounPhrase(tokens, chunks, cur));
    } else if (c.kind === "PP" && c.prep !== undefined) {
      const inner = node("NP", leavesOf(tokens, { ...c, start: c.prep + 1 }));
      out.push(node("PP", [leaf(tokens[c.prep]), inner]));
      cur.i += 1;
    } else if (c.kind === "VERB" || c.kind === "AUX") {
      cur.i += 1;
      const vpChildren = [leaf(tokens[c.head]),
                          ...restConstituents(tokens, chunks, cur)];
      out.push(node("VP", vpChildren));
    } else if (c.kind === "PUNCT") {
      out.push(leaf(tokens[c.head]));
      cur.i += 1;
    } else if (c.kind === "WH") {
      out.push(whPhrase(tokens, c));
      cur.i += 1;
    } else {
      for (const l of leavesOf(tokens, c)) out.push(l);
      cur.i += 1;
    }
  }
  return out;
}

function buildRoot(tokens: TaggedToken[], chunks: Chunk[]): TreeNode {
  if (chunks.length === 0) {
    throw new Error("no tokens to parse");
  }
  // trailing punctuation hangs off the sentence node, not the last phrase
  const tailPunct: TreeNode[] = [];
  let upto = chunks.length;
  while (upto > 0 && chunks[upto - 1].kind === "PUNCT") {
    upto -= 1;
    tailPunct.unshift(leaf(tokens[chunks[upto].head]));
  }
  const main = chunks.slice(0, upto);
  if (main.length === 0) {
    return node("ROOT", [node("FRAG", tailPunct)]);
  }

  const cur: Cursor = { i: 0 };
  const first = main[0];
  const second = main[1];

  // wh-question with a copula: (SBARQ WH (SQ be NP...) .)
  if (first.kind === "WH" && second !== undefined && second.kind === "AUX" &&
      tokens[second.head].lemma === "be") {
    const wh = whPhrase(tokens, first);
    cur.i = 2;
    const sqChildren: TreeNode[] = [leaf(tokens[second.head]),
                                    ...restConstituents(tokens, main, cur)];
    return node("ROOT", [node("SBARQ", [wh, node("SQ", sqChildren),
                                        ...tailPunct])]);
  }

  // imperative: leading verb
  if (first.kind === "VERB") {
    const body = restConstituents(tokens, main, cur);
    return node("ROOT", [node("S", [...body, ...tailPunct])]);
  }

  // declarative with a verb somewhere
  const hasVerb = main.some((c) => c.kind === "VERB" || c.kind === "AUX");
  if (hasVerb && (first.kind === "NP" || first.kind === "WH")) {
    const subj = first.kind === "NP"
      ? nounPhrase(tokens, main, cur)
      : (cur.i += 1, whPhrase(tokens, first));
    const body = restConstituents(tokens, main, cur);
    return node("ROOT", [node("S", [subj, ...body, ...tailPunct])]);
  }

  // fragment fallback
  const body = restConstituents(tokens, main, cur);
  return node("ROOT", [node("FRAG", [...body, ...tailPunct])]);
}

function collect(treeNode: TreeNode, out: string[]): void {
  if ("leaf" in treeNode) {
    out.push(treeNode.leaf);
    return;
  }
  for (const child of treeNode.children) collect(child, out);
}

function checkLeaves(tokens: TaggedToken[], tree: TreeNode): void {
  const got: string[] = [];
  collect(tree, got);
  const want = tokens.map((t) => escapeForm(t.form));
  if (got.length !== want.length || got.some((g, i) => g !== want[i])) {
    throw new Error(
      `tree leaves [${got.join(" ")}] do not spell the sentence [${want.join(" ")}]`);
  }
}

export function printTree(tree: TreeNode): string {
  if ("leaf" in tree) return `(${tree.label} ${tree.leaf})`;
  return `(${tree.label} ${tree.children.map(printTree).join(" ")})`;
}
