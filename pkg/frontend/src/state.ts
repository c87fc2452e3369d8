// Application state is nothing but the last acknowledged server
// responses; rendering derives from it alone, so replaying the same
// responses reproduces the identical view.  No inference happens here.

import type {
  Delta,
  EditOp,
  ErrorPayload,
  QueryResponse,
  TheoryView,
  WhatIfResponse,
} from "./types.js";

export interface AnswerState {
  mode: "query" | "whatif";
  encoded: string;
  response: QueryResponse | WhatIfResponse;
}

export interface AppState {
  theory: TheoryView | null;
  answer: AnswerState | null;
  banner: Delta | null;
  error: ErrorPayload | null;
  itemErrors: Record<string, ErrorPayload>;
  draft: EditOp[];
}

export const initialState: AppState = {
  theory: null,
  answer: null,
  banner: null,
  error: null,
  itemErrors: {},
  draft: [],
};

export function withTheory(state: AppState, view: TheoryView): AppState {
  return {
    ...state,
    theory: view,
    banner: null,
    error: null,
    itemErrors: {},
    answer: null,
    draft: [],
  };
}

export function withEditAck(
  state: AppState,
  view: TheoryView,
  delta: Delta,
): AppState {
  return {
    ...state,
    theory: view,
    banner: delta,
    error: null,
    itemErrors: {},
    draft: [],
  };
}

export function withAnswer(
  state: AppState,
  mode: "query" | "whatif",
  encoded: string,
  response: QueryResponse | WhatIfResponse,
): AppState {
  return { ...state, answer: { mode, encoded, response }, error: null };
}

export function withError(state: AppState, error: ErrorPayload): AppState {
  return { ...state, error };
}

export function withItemError(
  state: AppState,
  itemId: string,
  error: ErrorPayload,
): AppState {
  return { ...state, itemErrors: { ...state.itemErrors, [itemId]: error } };
}

export function withDraft(state: AppState, draft: EditOp[]): AppState {
  return { ...state, draft };
}

export function draftWith(state: AppState, op: EditOp): AppState {
  return withDraft(state, [...state.draft, op]);
}
