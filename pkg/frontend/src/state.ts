/** Pure view-state reducer: every transition is a function of
 * (state, event) with no I/O, so the whole interaction model is testable
 * without a browser. Server responses arrive as events carrying their
 * payload; each handler validates that the payload still matches what the
 * current state is waiting for, so stale responses can never overwrite
 * newer state.
 */

import type { ExpansionDoc, RelatedDoc, Strategy } from "./types.js";

export type Mode = "full-layout" | "aggregated";

export interface ViewState {
  readonly mode: Mode;
  /** Expanded community ids, in click order. */
  readonly expanded: readonly number[];
  /** Server geometry per expanded community; absent while the fetch runs. */
  readonly geometries: Readonly<Record<number, ExpansionDoc>>;
  readonly selectedNode: string | null;
  readonly strategy: Strategy;
  readonly k: number;
  /** Related-node ids; nonempty only when a node is selected. */
  readonly highlights: readonly string[];
  readonly toast: string | null;
}

export type Event =
  | { type: "mode-set"; mode: Mode }
  | { type: "expand-toggled"; community: number }
  | { type: "expansion-received"; geometry: ExpansionDoc }
  | { type: "expansion-failed"; community: number; message: string }
  | { type: "node-selected"; node: string }
  | { type: "related-received"; result: RelatedDoc }
  | { type: "related-failed"; query: string; strategy: string; message: string }
  | { type: "strategy-set"; strategy: Strategy }
  | { type: "selection-cleared" }
  | { type: "toast-dismissed" };

export function initialState(strategy: Strategy = "local", k = 5): ViewState {
  return {
    mode: "full-layout",
    expanded: [],
    geometries: {},
    selectedNode: null,
    strategy,
    k,
    highlights: [],
    toast: null,
  };
}

function without(
  geometries: Readonly<Record<number, ExpansionDoc>>,
  community: number,
): Record<number, ExpansionDoc> {
  const rest = { ...geometries };
  delete rest[community];
  return rest;
}

/**
 * @param known ids of the communities the server reported; expand events
 *              for anything else are rejected with a toast.
 */
export function reduce(
  state: ViewState,
  event: Event,
  known: ReadonlySet<number>,
): ViewState {
  switch (event.type) {
    case "mode-set": {
      if (event.mode === state.mode) return state;
      // highlights only exist in the full layout; expansions only render in
      // aggregated mode but survive a round trip so the scene is restored.
      return { ...state, mode: event.mode, selectedNode: null, highlights: [] };
    }

    case "expand-toggled": {
      if (state.mode !== "aggregated") return state;
      if (!known.has(event.community)) {
        return { ...state, toast: `unknown community ${event.community}` };
      }
      if (state.expanded.includes(event.community)) {
        return {
          ...state,
          expanded: state.expanded.filter((c) => c !== event.community),
          geometries: without(state.geometries, event.community),
        };
      }
      return { ...state, expanded: [...state.expanded, event.community] };
    }

    case "expansion-received": {
      const c = event.geometry.community;
      // dropped when the user collapsed (or never expanded) c in the meantime
      if (!state.expanded.includes(c)) return state;
      return { ...state, geometries: { ...state.geometries, [c]: event.geometry } };
    }

    case "expansion-failed": {
      if (!state.expanded.includes(event.community)) {
        return { ...state, toast: event.message };
      }
      // roll the optimistic expansion back: scene equals the pre-click scene
      return {
        ...state,
        expanded: state.expanded.filter((c) => c !== event.community),
        geometries: without(state.geometries, event.community),
        toast: event.message,
      };
    }

    case "node-selected": {
      if (state.mode !== "full-layout") return state;
      return { ...state, selectedNode: event.node, highlights: [] };
    }

    case "related-received": {
      const { query, strategy, ranked } = event.result;
      if (query !== state.selectedNode || strategy !== state.strategy) {
        return state; // stale: selection or strategy moved on
      }
      return { ...state, highlights: ranked.map((r) => r.id) };
    }

    case "related-failed": {
      if (event.query !== state.selectedNode || event.strategy !== state.strategy) {
        return state;
      }
      return { ...state, highlights: [], toast: event.message };
    }

    case "strategy-set": {
      if (event.strategy === state.strategy) return state;
      // existing highlights stay visible until the re-fetch lands; the
      // guard in related-received only admits the new strategy's response.
      return { ...state, strategy: event.strategy };
    }

    case "selection-cleared": {
      if (state.selectedNode === null && state.highlights.length === 0) return state;
      return { ...state, selectedNode: null, highlights: [] };
    }

    case "toast-dismissed": {
      return state.toast === null ? state : { ...state, toast: null };
    }
  }
}

/** Communities whose geometry is still being fetched. */
export function pendingExpansions(state: ViewState): number[] {
  return state.expanded.filter((c) => !(c in state.geometries));
}
