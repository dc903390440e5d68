/** JSON payload shapes of the /api/* endpoints this client consumes. */

export interface GraphNode {
  id: string;
  label?: string;
  attrs?: Record<string, string | number>;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: [string, string][];
}

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
  community: number;
}

export interface LayoutDoc {
  params: Record<string, unknown>;
  nodes: LayoutNode[];
  edges: [string, string][];
}

export interface AggregatedCommunity {
  community: number;
  center: [number, number];
  radius: number;
  size: number;
  label: string | null;
  color: string;
}

export interface AggregatedEdge {
  communities: [number, number];
  count: number;
  width: number;
}

export interface AggregationDoc {
  nodes: AggregatedCommunity[];
  edges: AggregatedEdge[];
}

export interface CrossEdge {
  member: string;
  far_node: string;
  far_community: number;
  interior: [number, number];
  anchor: [number, number];
  exterior: [number, number];
  control1: [number, number];
  control2: [number, number];
  color: string;
}

export interface ExpansionDoc {
  community: number;
  center: [number, number];
  radius: number;
  members: { id: string; x: number; y: number }[];
  cross_edges: CrossEdge[];
}

export interface RelatedDoc {
  query: string;
  strategy: string;
  ranked: { id: string; similarity: number }[];
}

export type Strategy = "local" | "global" | "attribute";

export const STRATEGIES: readonly Strategy[] = ["local", "global", "attribute"];
