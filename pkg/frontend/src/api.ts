/** Thin typed client for the /api/* endpoints. The fetch implementation is
 * injected so tests can serve recorded fixtures without a network.
 */

import type {
  AggregationDoc,
  ExpansionDoc,
  GraphDoc,
  LayoutDoc,
  RelatedDoc,
  Strategy,
} from "./types.js";

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function getJson<T>(fetchLike: FetchLike, url: string): Promise<T> {
  const response = await fetchLike(url);
  if (!response.ok) {
    let message = `request failed (${response.status})`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body && typeof body.error === "string") message = body.error;
    } catch {
      // non-JSON error body: keep the status message
    }
    throw new ApiError(response.status, message);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private readonly fetchLike: FetchLike = (url) => globalThis.fetch(url),
    private readonly base = "",
  ) {}

  graph(): Promise<GraphDoc> {
    return getJson(this.fetchLike, `${this.base}/api/graph`);
  }

  layout(): Promise<LayoutDoc> {
    return getJson(this.fetchLike, `${this.base}/api/layout`);
  }

  aggregation(): Promise<AggregationDoc> {
    return getJson(this.fetchLike, `${this.base}/api/aggregation`);
  }

  expand(community: number): Promise<ExpansionDoc> {
    return getJson(this.fetchLike, `${this.base}/api/expand/${community}`);
  }

  related(node: string, strategy: Strategy, k: number): Promise<RelatedDoc> {
    const params = new URLSearchParams({ node, strategy, k: String(k) });
    return getJson(this.fetchLike, `${this.base}/api/related?${params}`);
  }
}
