export interface TaggedToken {
  form: string;
  lemma: string;
  /** Penn Treebank tag, used for tree preterminals and the XPOS column. */
  ptb: string;
  /** Universal POS tag, used for the UPOS column. */
  upos: string;
}

export interface DepToken extends TaggedToken {
  /** 1-based position within the sentence. */
  index: number;
  /** 0 marks the sentence root. */
  head: number;
  deprel: string;
}

export type TreeNode =
  | { label: string; children: TreeNode[] }
  | { label: string; leaf: string };

export interface EntitySpan {
  text: string;
  type: "PERSON" | "ORG" | "LOC" | "DATE" | "OTHER";
  start: number;
  end: number;
}

export interface ParseRecord {
  id: string;
  conllu: string;
  constituency: string;
  entities: EntitySpan[];
}

export interface ErrorRecord {
  id: string;
  error: string;
}
