// Payload shapes of the reasoning service's JSON API.

export interface LiteralDoc {
  a: string;
  pred: string;
  b: string;
  kind: "attr" | "rel";
  polarity: "+" | "-";
}

export interface UnificationDoc {
  needed: LiteralDoc;
  matched: LiteralDoc;
  score: number;
  operator: string;
}

export interface ProofDoc {
  literal: LiteralDoc;
  kind: "asserted" | "rule" | "naf";
  depth: number;
  children: ProofDoc[];
  fact_id?: string;
  rule_id?: string;
  binding?: string | null;
  unifications?: UnificationDoc[];
}

export interface FactDoc extends LiteralDoc {
  id: string;
  source?: string;
}

export interface RuleDoc {
  id: string;
  antecedents: LiteralDoc[];
  consequent: LiteralDoc;
  source?: string;
}

export interface TheoryDoc {
  facts: FactDoc[];
  rules: RuleDoc[];
  variables?: string[];
}

export interface TheoryView {
  theory: TheoryDoc;
  provenance: Record<string, string>;
}

export interface LiteralEntry {
  literal: LiteralDoc;
  encoded: string;
  depth?: number;
}

export interface Delta {
  added: LiteralEntry[];
  removed: LiteralEntry[];
}

export interface EditResponse extends TheoryView {
  delta: Delta;
  unifications: UnificationDoc[];
}

export interface QueryResponse {
  truth: boolean;
  proof: ProofDoc;
  query: LiteralEntry;
  unifications: UnificationDoc[];
  unification?: UnificationDoc;
}

export interface WhatIfResponse extends QueryResponse {
  delta: Delta;
}

export interface ErrorPayload {
  type: string;
  reason: string;
  position?: number;
}

export type EditOp =
  | { op: "add_fact" | "add_rule"; id?: string; encoded: string }
  | { op: "replace_fact" | "replace_rule"; id: string; encoded: string }
  | { op: "remove_fact" | "remove_rule" | "remove"; id: string };

export interface SentenceDoc {
  id: string;
  text: string;
  role: "fact" | "rule" | "query";
  gold?: string;
}
