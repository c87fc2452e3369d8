// Wiring: every control issues a request, waits for the server's
// acknowledgment, folds the response into the state and re-renders.
// Nothing updates optimistically.

import { ApiError, Client } from "./api.js";
import {
  AppState,
  draftWith,
  initialState,
  withAnswer,
  withDraft,
  withEditAck,
  withError,
  withItemError,
  withTheory,
} from "./state.js";
import { render } from "./render.js";
import type { EditOp, SentenceDoc } from "./types.js";

const client = new Client("");
let state: AppState = initialState;

const view = document.getElementById("view") as HTMLElement;
const draftList = document.getElementById("draft-list") as HTMLElement;

function apply(next: AppState): void {
  state = next;
  render(state, view);
  draftList.textContent = state.draft
    .map((op) => ("encoded" in op ? `${op.op} ${op.id ?? ""} ${op.encoded}` : `${op.op} ${op.id}`))
    .join("\n");
}

function fail(err: unknown, itemId?: string): void {
  if (err instanceof ApiError) {
    let next = withError(state, err.payload);
    if (itemId) {
      next = withItemError(next, itemId, err.payload);
    }
    apply(next);
  } else {
    apply(withError(state, { type: "client_error", reason: String(err) }));
  }
}

function inputValue(id: string): string {
  return (document.getElementById(id) as HTMLInputElement | HTMLTextAreaElement).value;
}

async function refreshTheory(): Promise<void> {
  try {
    apply(withTheory(state, await client.getTheory()));
  } catch (err) {
    fail(err);
  }
}

function parseSentences(text: string): SentenceDoc[] {
  return text
    .split("\n")
    .map((line) => line.trim())
    .filter(Boolean)
    .map((line) => JSON.parse(line) as SentenceDoc);
}

function draftOpFromForm(): EditOp | null {
  const op = (document.getElementById("edit-op") as HTMLSelectElement).value;
  const id = inputValue("edit-id").trim();
  const encoded = inputValue("edit-encoded").trim();
  if (op === "remove") {
    return id ? { op: "remove", id } : null;
  }
  if (op === "add_fact" || op === "add_rule") {
    return encoded ? { op, ...(id ? { id } : {}), encoded } : null;
  }
  if (op === "replace_fact" || op === "replace_rule") {
    return id && encoded ? { op, id, encoded } : null;
  }
  return null;
}

function hookup(): void {
  document.getElementById("load")!.addEventListener("click", async () => {
    try {
      const sentences = parseSentences(inputValue("sentences"));
      apply(withTheory(state, await client.loadSentences(sentences, "template")));
    } catch (err) {
      fail(err);
    }
  });

  document.getElementById("ask")!.addEventListener("click", async () => {
    const encoded = inputValue("query").trim();
    try {
      apply(withAnswer(state, "query", encoded, await client.query(encoded)));
    } catch (err) {
      fail(err);
    }
  });

  document.getElementById("apply-edit")!.addEventListener("click", async () => {
    const op = draftOpFromForm();
    if (!op) return;
    const itemId = "id" in op ? op.id : undefined;
    try {
      const ack = await client.edit([op]);
      apply(withEditAck(state, ack, ack.delta));
    } catch (err) {
      fail(err, itemId);
    }
  });

  document.getElementById("draft-add")!.addEventListener("click", () => {
    const op = draftOpFromForm();
    if (op) apply(draftWith(state, op));
  });

  document.getElementById("draft-clear")!.addEventListener("click", () => {
    apply(withDraft(state, []));
  });

  document.getElementById("preview")!.addEventListener("click", async () => {
    const encoded = inputValue("query").trim();
    try {
      const response = await client.whatIf(state.draft, encoded);
      apply(withAnswer(state, "whatif", encoded, response));
    } catch (err) {
      fail(err);
    }
  });

  document.getElementById("commit")!.addEventListener("click", async () => {
    if (!state.draft.length) return;
    try {
      const ack = await client.edit(state.draft);
      apply(withEditAck(state, ack, ack.delta));
    } catch (err) {
      fail(err);
    }
  });

  void refreshTheory();
}

hookup();
