/** Loader for the recorded server responses under tests/fixtures/.
 * Regenerate them with scripts/record_ui_fixtures.py at the repo root.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import type {
  AggregationDoc,
  ExpansionDoc,
  GraphDoc,
  LayoutDoc,
  RelatedDoc,
} from "../src/types.js";

// process.cwd() is the frontend package root when vitest runs; import.meta.url
// is unusable here because the jsdom environment rewrites it to an http URL.
function load<T>(name: string): T {
  const path = join(process.cwd(), "tests", "fixtures", `${name}.json`);
  return JSON.parse(readFileSync(path, "utf8")) as T;
}

export const graphDoc = load<GraphDoc>("graph");
export const layoutDoc = load<LayoutDoc>("layout");
export const aggregationDoc = load<AggregationDoc>("aggregation");

export const expansionDocs: Record<number, ExpansionDoc> = Object.fromEntries(
  aggregationDoc.nodes.map((n) => [
    n.community,
    load<ExpansionDoc>(`expand_${n.community}`),
  ]),
);

export const relatedLocal = load<RelatedDoc>("related_Gillenormand_local");
export const relatedGlobal = load<RelatedDoc>("related_Gillenormand_global");
export const relatedAttribute = load<RelatedDoc>(
  "related_Gillenormand_attribute",
);

export const knownCommunities: ReadonlySet<number> = new Set(
  aggregationDoc.nodes.map((n) => n.community),
);
