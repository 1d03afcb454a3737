const CLINGING = /^[("'\[]+|[)"'\],.;:!?]+$/;

/** Split text into sentences on terminal punctuation. */
export function splitSentences(text: string): string[] {
  const out: string[] = [];
  let current = "";
  for (const chunk of text.split(/\s+/)) {
    if (!chunk) continue;
    current = current ? `${current} ${chunk}` : chunk;
    if (/[.!?]["')]?$/.test(chunk)) {
      out.push(current);
      current = "";
    }
  }
  if (current) out.push(current);
  return out;
}

/** Whitespace tokenization with clinging punctuation split off. */
export function tokenize(sentence: string): string[] {
  const tokens: string[] = [];
  for (const raw of sentence.split(/\s+/)) {
    if (!raw) continue;
    let body = raw;
    const leading: string[] = [];
    const trailing: string[] = [];
    let m: RegExpMatchArray | null;
    while ((m = body.match(/^[("'\[]/))) {
      leading.push(m[0]);
      body = body.slice(1);
    }
    while ((m = body.match(/[)"'\],.;:!?]$/))) {
      trailing.unshift(m[0]);
      body = body.slice(0, -1);
    }
    tokens.push(...leading);
    if (body) tokens.push(body);
    tokens.push(...trailing);
  }
  return tokens;
}
