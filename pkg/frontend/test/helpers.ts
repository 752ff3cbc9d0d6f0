// Shared test plumbing: fixture loading and a fetch stub that serves the
// recorded backend responses, so DOM tests exercise real server JSON.

import { readFileSync } from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";

const here = path.dirname(fileURLToPath(import.meta.url));

export function fixture<T = any>(name: string): T {
  const raw = readFileSync(path.join(here, "fixtures", `${name}.json`), "utf8");
  return JSON.parse(raw) as T;
}

export function jsonResponse(data: unknown, status = 200): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => structuredClone(data),
  } as unknown as Response;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;
type Override = (input: string, body: any) => Response | null;

/** Route requests to recorded fixtures the way the live server would
 *  answer them. An optional override wins when it returns a response. */
export function fixtureFetch(override?: Override): FetchLike {
  return async (input, init) => {
    const body = init?.body ? JSON.parse(init.body as string) : null;
    if (override) {
      const hit = override(input, body);
      if (hit) return hit;
    }

    if (input.includes("/api/health")) return jsonResponse({ ok: true });

    if (input.includes("/api/qp")) {
      const url = new URL(input, "http://test.invalid");
      const braid = url.searchParams.get("braid") ?? "";
      if (braid === "1 1 1") return jsonResponse(fixture("qp_a2"));
      if (braid === "1 2 1 2 1 2") return jsonResponse(fixture("qp_t33"));
      return jsonResponse(fixture("err_badbraid"), 400);
    }

    if (input.includes("/api/mutate")) {
      const vertex = body.vertex as string;
      const firstArrow = body.qp.arrows[0]?.id;
      if (vertex === "L1#1" && firstArrow === "a1") {
        return jsonResponse(fixture("mutate_a2_1"));
      }
      if (vertex === "L1#1" && firstArrow === "a1*") {
        return jsonResponse(fixture("mutate_a2_2"));
      }
      if (vertex === "L1#2") return jsonResponse(fixture("mutate_t33"));
      if (vertex === "2") return jsonResponse(fixture("mutate_tri0"));
      return jsonResponse(fixture("err_twocycle"), 422);
    }

    if (input.includes("/api/explore")) {
      if (body.depth === 4) return jsonResponse(fixture("explore_a2_d4"));
      if (body.depth === 0) return jsonResponse(fixture("explore_a2_d0"));
      return jsonResponse(fixture("explore_t33_d1"));
    }

    throw new Error(`unrouted request: ${input}`);
  };
}
