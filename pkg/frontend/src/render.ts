/** DOM/SVG scene construction. Every element position comes straight from a
 * server payload — the client never computes layout, so the scene is a pure
 * function of (payloads, view state) plus a cosmetic viewport transform.
 */

import type { ViewState } from "./state.js";
import type {
  AggregationDoc,
  GraphDoc,
  LayoutDoc,
  Strategy,
} from "./types.js";
import { STRATEGIES } from "./types.js";

/** Community colors, identical to the server's SVG export palette. */
export const PALETTE = [
  "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
] as const;

export const HIGHLIGHT_COLOR = "#2ca02c";

export function colorFor(community: number): string {
  return PALETTE[community % PALETTE.length] as string;
}

const SVG_NS = "http://www.w3.org/2000/svg";

const NODE_RADIUS = 0.008;
const MEMBER_RADIUS = 0.007;
const EDGE_WIDTH = 0.0015;
const LABEL_SIZE = 0.018;

export interface Viewport {
  x: number;
  y: number;
  scale: number;
}

export interface Handlers {
  onNodeClick(id: string): void;
  onCommunityClick(community: number): void;
  onBackgroundClick(): void;
  onNodeHover(id: string | null, event: MouseEvent): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
  className?: string,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  if (className) el.setAttribute("class", className);
  return el;
}

interface SceneData {
  graph: GraphDoc;
  layout: LayoutDoc;
  aggregation: AggregationDoc;
}

function renderFullLayout(
  scene: SVGGElement,
  data: SceneData,
  state: ViewState,
  handlers: Handlers,
): void {
  const byId = new Map(data.layout.nodes.map((n) => [n.id, n]));
  for (const [a, b] of data.layout.edges) {
    const u = byId.get(a);
    const v = byId.get(b);
    if (!u || !v) continue;
    scene.append(
      svgEl(
        "line",
        { x1: u.x, y1: u.y, x2: v.x, y2: v.y,
          stroke: "#c0c0c0", "stroke-width": EDGE_WIDTH },
        "edge",
      ),
    );
  }
  const highlighted = new Set(state.highlights);
  for (const node of data.layout.nodes) {
    const hot = highlighted.has(node.id);
    const circle = svgEl(
      "circle",
      {
        cx: node.x,
        cy: node.y,
        r: hot ? NODE_RADIUS * 1.5 : NODE_RADIUS,
        fill: colorFor(node.community),
        stroke: hot ? HIGHLIGHT_COLOR : "#ffffff",
        "stroke-width": hot ? NODE_RADIUS : NODE_RADIUS / 4,
        "data-id": node.id,
        "data-community": node.community,
      },
      hot ? "node highlight" : "node",
    );
    if (node.id === state.selectedNode) circle.classList.add("selected");
    circle.addEventListener("click", (e) => {
      e.stopPropagation();
      handlers.onNodeClick(node.id);
    });
    circle.addEventListener("mouseenter", (e) =>
      handlers.onNodeHover(node.id, e as MouseEvent),
    );
    circle.addEventListener("mouseleave", (e) =>
      handlers.onNodeHover(null, e as MouseEvent),
    );
    scene.append(circle);
    if (hot || node.id === state.selectedNode) {
      const label = svgEl(
        "text",
        {
          x: node.x + NODE_RADIUS * 2,
          y: node.y - NODE_RADIUS,
          "font-size": LABEL_SIZE,
          fill: hot ? HIGHLIGHT_COLOR : "#333333",
          "data-id": node.id,
        },
        hot ? "highlight-label" : "selected-label",
      );
      label.textContent = node.id;
      scene.append(label);
    }
  }
}

function renderAggregated(
  scene: SVGGElement,
  data: SceneData,
  state: ViewState,
  handlers: Handlers,
): void {
  const centers = new Map(
    data.aggregation.nodes.map((n) => [n.community, n.center]),
  );
  for (const edge of data.aggregation.edges) {
    const [ca, cb] = edge.communities;
    // hide aggregate edges whose endpoints are both replaced by expansions
    if (state.expanded.includes(ca) && state.expanded.includes(cb)) continue;
    const a = centers.get(ca);
    const b = centers.get(cb);
    if (!a || !b) continue;
    scene.append(
      svgEl(
        "line",
        { x1: a[0], y1: a[1], x2: b[0], y2: b[1],
          stroke: "#b8b8b8", "stroke-width": edge.width,
          "data-count": edge.count },
        "community-edge",
      ),
    );
  }

  for (const agg of data.aggregation.nodes) {
    const geometry = state.geometries[agg.community];
    if (state.expanded.includes(agg.community) && geometry) {
      const boundary = svgEl(
        "circle",
        {
          cx: geometry.center[0],
          cy: geometry.center[1],
          r: geometry.radius,
          fill: "#ffffff",
          stroke: agg.color,
          "stroke-width": EDGE_WIDTH * 2,
          "data-community": agg.community,
        },
        "boundary",
      );
      boundary.addEventListener("click", (e) => {
        e.stopPropagation();
        handlers.onCommunityClick(agg.community);
      });
      scene.append(boundary);
      for (const cross of geometry.cross_edges) {
        const [ix, iy] = cross.interior;
        const [ax, ay] = cross.anchor;
        const [c1x, c1y] = cross.control1;
        const [c2x, c2y] = cross.control2;
        const [ex, ey] = cross.exterior;
        scene.append(
          svgEl(
            "path",
            {
              d: `M ${ix} ${iy} L ${ax} ${ay} ` +
                `C ${c1x} ${c1y}, ${c2x} ${c2y}, ${ex} ${ey}`,
              fill: "none",
              stroke: cross.color,
              "stroke-width": EDGE_WIDTH,
              "data-far-community": cross.far_community,
            },
            "cross-edge",
          ),
        );
      }
      for (const member of geometry.members) {
        scene.append(
          svgEl(
            "circle",
            {
              cx: member.x,
              cy: member.y,
              r: MEMBER_RADIUS,
              fill: agg.color,
              stroke: "#ffffff",
              "stroke-width": MEMBER_RADIUS / 4,
              "data-id": member.id,
            },
            "member",
          ),
        );
      }
    } else {
      const circle = svgEl(
        "circle",
        {
          cx: agg.center[0],
          cy: agg.center[1],
          r: agg.radius,
          fill: agg.color,
          "fill-opacity": 0.85,
          "data-community": agg.community,
          "data-size": agg.size,
        },
        "community",
      );
      circle.addEventListener("click", (e) => {
        e.stopPropagation();
        handlers.onCommunityClick(agg.community);
      });
      scene.append(circle);
      if (agg.label) {
        const label = svgEl(
          "text",
          {
            x: agg.center[0],
            y: agg.center[1],
            "font-size": LABEL_SIZE,
            "text-anchor": "middle",
            fill: "#222222",
          },
          "community-label",
        );
        label.textContent = agg.label;
        scene.append(label);
      }
    }
  }
}

export function renderScene(
  svg: SVGSVGElement,
  data: SceneData,
  state: ViewState,
  viewport: Viewport,
  handlers: Handlers,
): void {
  svg.setAttribute("viewBox", "0 0 1 1");
  svg.replaceChildren();
  const group = svgEl("g", {
    transform:
      `translate(${viewport.x} ${viewport.y}) scale(${viewport.scale})`,
  }, "viewport") as SVGGElement;
  svg.append(group);
  if (state.mode === "full-layout") {
    renderFullLayout(group, data, state, handlers);
  } else {
    renderAggregated(group, data, state, handlers);
  }
}

export function renderLegend(
  container: HTMLElement,
  aggregation: AggregationDoc,
): void {
  container.replaceChildren();
  for (const node of aggregation.nodes) {
    const item = document.createElement("div");
    item.className = "legend-item";
    const swatch = document.createElement("span");
    swatch.className = "legend-swatch";
    swatch.style.backgroundColor = node.color;
    const text = document.createElement("span");
    text.textContent = `${node.label ?? `community ${node.community}`} (${node.size})`;
    item.append(swatch, text);
    container.append(item);
  }
}

export function renderStrategyPicker(
  select: HTMLSelectElement,
  active: Strategy,
): void {
  select.replaceChildren();
  for (const strategy of STRATEGIES) {
    const option = document.createElement("option");
    option.value = strategy;
    option.textContent = strategy;
    option.selected = strategy === active;
    select.append(option);
  }
}

export function renderToast(container: HTMLElement, message: string | null): void {
  container.replaceChildren();
  if (message === null) {
    container.classList.remove("visible");
    return;
  }
  container.classList.add("visible");
  container.textContent = message;
}

export function renderErrorBanner(mount: HTMLElement, message: string): void {
  mount.replaceChildren();
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.textContent = message;
  mount.append(banner);
}
