import { printTree } from "./conparse";
import { parseConstituency } from "./conparse";
import { parseDependencies } from "./depparse";
import { extractEntities } from "./ner";
import { splitSentences, tokenize } from "./tokenize";
import { tagTokens } from "./tagger";
import { DepToken, EntitySpan, ParseRecord } from "./types";

function toConllu(tokens: DepToken[]): string {
  return tokens
    .map((t) => [t.index, t.form, t.lemma, t.upos, t.ptb, "_", t.head,
                 t.deprel, "_", "_"].join("\t"))
    .join("\n");
}

/**
 * Full analysis of one question: per-sentence CoNLL-U blocks (joined by a
 * blank line), one bracketed tree per sentence (joined by a newline), and
 * entity spans with offsets over the concatenated token sequence.
 */
export function parseQuestion(id: string, question: string): ParseRecord {
  const sentences = splitSentences(question.trim());
  if (sentences.length === 0) {
    throw new Error("empty question");
  }
  const conlluBlocks: string[] = [];
  const trees: string[] = [];
  const entities: EntitySpan[] = [];
  let offset = 0;
  for (const sentence of sentences) {
    const tokens = tokenize(sentence);
    if (tokens.length === 0) continue;
    const tagged = tagTokens(tokens);
    conlluBlocks.push(toConllu(parseDependencies(tagged)));
    trees.push(printTree(parseConstituency(tagged)));
    for (const span of extractEntities(tagged)) {
      entities.push({ ...span, start: span.start + offset,
                      end: span.end + offset });
    }
    offset += tokens.length;
  }
  if (conlluBlocks.length === 0) {
    throw new Error("empty question");
  }
  return {
    id,
    conllu: conlluBlocks.join("\n\n"),
    constituency: trees.join("\n"),
    entities,
  };
}
