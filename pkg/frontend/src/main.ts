/** Application wiring: fetch the server payloads once, then run a
 * dispatch -> reduce -> render loop. All layout geometry comes from the
 * server; the only client-side geometry is the cosmetic pan/zoom transform.
 */

import { ApiClient, ApiError, type FetchLike } from "./api.js";
import {
  initialState,
  pendingExpansions,
  reduce,
  type Event,
  type ViewState,
} from "./state.js";
import {
  renderErrorBanner,
  renderLegend,
  renderScene,
  renderStrategyPicker,
  renderToast,
  type Handlers,
  type Viewport,
} from "./render.js";
import type {
  AggregationDoc,
  GraphDoc,
  GraphNode,
  LayoutDoc,
  Strategy,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface App {
  readonly state: ViewState;
  dispatch(event: Event): void;
  /** Resolves once every in-flight server request has settled. */
  whenIdle(): Promise<void>;
  readonly mount: HTMLElement;
}

interface Dom {
  svg: SVGSVGElement;
  modeButton: HTMLButtonElement;
  strategySelect: HTMLSelectElement;
  legend: HTMLElement;
  toast: HTMLElement;
  tooltip: HTMLElement;
}

function buildScaffold(mount: HTMLElement): Dom {
  mount.replaceChildren();
  mount.classList.add("explorer");

  const toolbar = document.createElement("div");
  toolbar.className = "toolbar";
  const modeButton = document.createElement("button");
  modeButton.className = "mode-toggle";
  const strategyLabel = document.createElement("label");
  strategyLabel.textContent = "strategy ";
  const strategySelect = document.createElement("select");
  strategySelect.className = "strategy-picker";
  strategyLabel.append(strategySelect);
  toolbar.append(modeButton, strategyLabel);

  const stage = document.createElement("div");
  stage.className = "stage";
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "scene");
  svg.setAttribute("viewBox", "0 0 1 1");
  const legend = document.createElement("div");
  legend.className = "legend";
  stage.append(svg, legend);

  const toast = document.createElement("div");
  toast.className = "toast";
  const tooltip = document.createElement("div");
  tooltip.className = "tooltip";

  mount.append(toolbar, stage, toast, tooltip);
  return { svg, modeButton, strategySelect, legend, toast, tooltip };
}

function describeNode(node: GraphNode, community: number): string {
  const lines = [`${node.id} — community ${community}`];
  for (const [key, value] of Object.entries(node.attrs ?? {})) {
    lines.push(`${key}: ${value}`);
  }
  return lines.join("\n");
}

export async function init(
  mount: HTMLElement,
  fetchLike?: FetchLike,
): Promise<App> {
  const api = new ApiClient(fetchLike);

  let graph: GraphDoc;
  let layout: LayoutDoc;
  let aggregation: AggregationDoc;
  try {
    [graph, layout, aggregation] = await Promise.all([
      api.graph(),
      api.layout(),
      api.aggregation(),
    ]);
  } catch (error) {
    const message =
      error instanceof Error ? error.message : "failed to load the graph";
    renderErrorBanner(mount, `could not reach the layout service: ${message}`);
    throw error;
  }

  const dom = buildScaffold(mount);
  const data = { graph, layout, aggregation };
  const known = new Set(aggregation.nodes.map((n) => n.community));
  const graphNodes = new Map(graph.nodes.map((n) => [n.id, n]));
  const communityOf = new Map(layout.nodes.map((n) => [n.id, n.community]));

  let state = initialState();
  const viewport: Viewport = { x: 0, y: 0, scale: 1 };
  const inFlight = new Set<Promise<unknown>>();
  const expandsInFlight = new Set<number>();
  let lastRelatedKey: string | null = null;

  function track<T>(promise: Promise<T>): Promise<T> {
    inFlight.add(promise);
    const drop = () => inFlight.delete(promise);
    promise.then(drop, drop);
    return promise;
  }

  async function whenIdle(): Promise<void> {
    while (inFlight.size > 0) {
      await Promise.allSettled([...inFlight]);
    }
  }

  const handlers: Handlers = {
    onNodeClick: (id) => dispatch({ type: "node-selected", node: id }),
    onCommunityClick: (community) =>
      dispatch({ type: "expand-toggled", community }),
    onBackgroundClick: () => dispatch({ type: "selection-cleared" }),
    onNodeHover: (id, event) => {
      if (id === null) {
        dom.tooltip.classList.remove("visible");
        return;
      }
      const node = graphNodes.get(id);
      if (!node) return;
      dom.tooltip.textContent = describeNode(node, communityOf.get(id) ?? -1);
      dom.tooltip.style.left = `${event.clientX + 12}px`;
      dom.tooltip.style.top = `${event.clientY + 12}px`;
      dom.tooltip.classList.add("visible");
    },
  };

  function render(): void {
    renderScene(dom.svg, data, state, viewport, handlers);
    renderToast(dom.toast, state.toast);
    renderStrategyPicker(dom.strategySelect, state.strategy);
    dom.modeButton.textContent =
      state.mode === "full-layout" ? "show communities" : "show full layout";
  }

  function runEffects(): void {
    for (const community of pendingExpansions(state)) {
      if (expandsInFlight.has(community)) continue;
      expandsInFlight.add(community);
      track(
        api.expand(community).then(
          (geometry) => {
            expandsInFlight.delete(community);
            dispatch({ type: "expansion-received", geometry });
          },
          (error: unknown) => {
            expandsInFlight.delete(community);
            dispatch({
              type: "expansion-failed",
              community,
              message:
                error instanceof ApiError
                  ? error.message
                  : "expansion request failed",
            });
          },
        ),
      );
    }

    if (state.mode === "full-layout" && state.selectedNode !== null) {
      const node = state.selectedNode;
      const strategy = state.strategy;
      const key = `${node}|${strategy}|${state.k}`;
      if (key !== lastRelatedKey) {
        lastRelatedKey = key;
        track(
          api.related(node, strategy, state.k).then(
            (result) => dispatch({ type: "related-received", result }),
            (error: unknown) =>
              dispatch({
                type: "related-failed",
                query: node,
                strategy,
                message:
                  error instanceof ApiError
                    ? error.message
                    : "related-node request failed",
              }),
          ),
        );
      }
    } else {
      lastRelatedKey = null;
    }
  }

  function dispatch(event: Event): void {
    const next = reduce(state, event, known);
    if (next === state) return;
    state = next;
    render();
    runEffects();
  }

  // static chrome
  renderLegend(dom.legend, aggregation);
  dom.modeButton.addEventListener("click", () =>
    dispatch({
      type: "mode-set",
      mode: state.mode === "full-layout" ? "aggregated" : "full-layout",
    }),
  );
  dom.strategySelect.addEventListener("change", () =>
    dispatch({
      type: "strategy-set",
      strategy: dom.strategySelect.value as Strategy,
    }),
  );
  dom.svg.addEventListener("click", () => handlers.onBackgroundClick());
  dom.toast.addEventListener("click", () =>
    dispatch({ type: "toast-dismissed" }),
  );

  // cosmetic pan/zoom on the viewport transform
  let panFrom: { x: number; y: number } | null = null;
  dom.svg.addEventListener("wheel", (event) => {
    event.preventDefault();
    const factor = Math.exp(-event.deltaY * 0.001);
    viewport.scale = Math.min(10, Math.max(0.4, viewport.scale * factor));
    render();
  });
  dom.svg.addEventListener("mousedown", (event) => {
    panFrom = { x: event.clientX, y: event.clientY };
  });
  dom.svg.addEventListener("mousemove", (event) => {
    if (panFrom === null) return;
    const rect = dom.svg.getBoundingClientRect();
    const unit = Math.max(rect.width, 1);
    viewport.x += (event.clientX - panFrom.x) / unit;
    viewport.y += (event.clientY - panFrom.y) / unit;
    panFrom = { x: event.clientX, y: event.clientY };
    render();
  });
  dom.svg.addEventListener("mouseup", () => {
    panFrom = null;
  });

  render();

  return {
    get state() {
      return state;
    },
    dispatch,
    whenIdle,
    mount,
  };
}
