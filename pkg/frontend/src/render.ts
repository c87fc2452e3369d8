// Pure DOM builders.  Everything the user sees comes out of these
// functions applied to the state; they never talk to the server.

import type { AppState } from "./state.js";
import type {
  Delta,
  ErrorPayload,
  LiteralDoc,
  ProofDoc,
  TheoryView,
  UnificationDoc,
} from "./types.js";

export function literalText(literal: LiteralDoc): string {
  return `(${literal.a}, ${literal.pred}, ${literal.b}, ${literal.polarity})`;
}

export function encodeLiteral(literal: LiteralDoc): string {
  if (literal.kind === "attr") {
    const polarity = literal.polarity === "-" ? "<neg>" : "<pos>";
    return `<arg0> ${literal.a} <pred> ${literal.pred} <arg1> ${literal.b} ${polarity}`;
  }
  const tail = literal.polarity === "-" ? " <neg>" : "";
  return `<arg1> ${literal.a} <pred> ${literal.pred} <arg2> ${literal.b}${tail}`;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderTheory(view: TheoryView, state: AppState): HTMLElement {
  const root = el("div", "theory");

  const facts = el("section", "facts");
  facts.append(el("h3", undefined, `Facts (${view.theory.facts.length})`));
  const factTable = el("table");
  for (const fact of view.theory.facts) {
    const row = el("tr", "item");
    row.dataset.id = fact.id;
    row.append(el("td", "id", fact.id));
    row.append(el("td", "literal", literalText(fact)));
    const source = view.provenance[fact.id];
    row.append(el("td", "source", source ? `from ${source}` : ""));
    const status = state.itemErrors[fact.id];
    row.append(
      el("td", status ? "status invalid" : "status valid", status ? "error" : "ok"),
    );
    factTable.append(row);
  }
  facts.append(factTable);

  const rules = el("section", "rules");
  rules.append(el("h3", undefined, `Rules (${view.theory.rules.length})`));
  const ruleTable = el("table");
  for (const rule of view.theory.rules) {
    const row = el("tr", "item");
    row.dataset.id = rule.id;
    const body = rule.antecedents.map(literalText).join(" & ");
    row.append(el("td", "id", rule.id));
    row.append(el("td", "literal", `${body} -> ${literalText(rule.consequent)}`));
    const source = view.provenance[rule.id];
    row.append(el("td", "source", source ? `from ${source}` : ""));
    const status = state.itemErrors[rule.id];
    row.append(
      el("td", status ? "status invalid" : "status valid", status ? "error" : "ok"),
    );
    ruleTable.append(row);
  }
  rules.append(ruleTable);

  root.append(facts, rules);
  return root;
}

function unificationNote(record: UnificationDoc): HTMLElement {
  const note = el(
    "div",
    record.operator === "exact" ? "unification exact" : "unification weak",
    `${literalText(record.needed)} matched ${literalText(record.matched)} ` +
      `[${record.operator}, score ${record.score.toFixed(2)}]`,
  );
  return note;
}

export function renderProof(doc: ProofDoc): HTMLElement {
  if (doc.kind === "naf") {
    const leaf = el("div", "proof-node naf");
    leaf.append(
      el("span", "literal", literalText(doc.literal)),
      el("span", "why", ` closed world: no derivation of the positive counterpart`),
    );
    return leaf;
  }
  if (doc.kind === "asserted") {
    const leaf = el("div", "proof-node asserted");
    leaf.append(
      el("span", "literal", literalText(doc.literal)),
      el("span", "why", ` fact ${doc.fact_id ?? ""}`),
    );
    return leaf;
  }
  // rule applications are collapsible outline nodes
  const details = el("details", "proof-node rule") as HTMLDetailsElement;
  details.open = true;
  const summary = el("summary");
  const binding = doc.binding ? ` (${doc.binding})` : "";
  summary.append(
    el("span", "literal", literalText(doc.literal)),
    el("span", "why", ` rule ${doc.rule_id}${binding}, depth ${doc.depth}`),
  );
  details.append(summary);
  for (const record of doc.unifications ?? []) {
    details.append(unificationNote(record));
  }
  const children = el("div", "children");
  for (const child of doc.children) {
    children.append(renderProof(child));
  }
  details.append(children);
  return details;
}

export function renderVerdict(truth: boolean, proof: ProofDoc): HTMLElement {
  const root = el("div", "verdict-block");
  const label = truth ? "true" : "false";
  const cwa = proof.kind === "naf" ? " (closed world)" : "";
  const verdict = el("div", `verdict ${label}`, label + cwa);
  root.append(verdict, renderProof(proof));
  return root;
}

export function renderDelta(delta: Delta): HTMLElement {
  const banner = el("div", "delta-banner");
  const added = el("div", "added");
  added.append(el("strong", undefined, `now derivable (${delta.added.length}): `));
  added.append(
    el("span", undefined, delta.added.map((entry) => literalText(entry.literal)).join(", ")),
  );
  const removed = el("div", "removed");
  removed.append(
    el("strong", undefined, `no longer derivable (${delta.removed.length}): `),
  );
  removed.append(
    el(
      "span",
      undefined,
      delta.removed.map((entry) => literalText(entry.literal)).join(", "),
    ),
  );
  banner.append(added, removed);
  return banner;
}

export function renderError(error: ErrorPayload): HTMLElement {
  const box = el("div", "error-box");
  box.append(el("strong", undefined, error.type));
  let detail = error.reason;
  if (error.position !== undefined) {
    detail += ` (at token ${error.position})`;
  }
  box.append(el("span", undefined, ` ${detail}`));
  return box;
}

export function render(state: AppState, mount: HTMLElement): void {
  mount.replaceChildren();
  if (state.error) {
    mount.append(renderError(state.error));
  }
  if (state.banner) {
    mount.append(renderDelta(state.banner));
  }
  if (state.theory) {
    mount.append(renderTheory(state.theory, state));
  }
  if (state.answer) {
    const section = el("section", `answer ${state.answer.mode}`);
    section.append(
      el(
        "h3",
        undefined,
        state.answer.mode === "whatif" ? "What-if result (not committed)" : "Answer",
      ),
    );
    section.append(renderVerdict(state.answer.response.truth, state.answer.response.proof));
    if ("delta" in state.answer.response) {
      section.append(renderDelta(state.answer.response.delta));
    }
    mount.append(section);
  }
}
