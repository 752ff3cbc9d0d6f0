import { describe, expect, it } from "vitest";
import { ApiClient } from "../src/api";
import { Session, viewEqual, viewModel } from "../src/session";
import { MutateResponse, QpDoc } from "../src/types";
import { fixture, fixtureFetch } from "./helpers";

const a2 = () => fixture<QpDoc>("qp_a2");
const mut1 = () => fixture<MutateResponse>("mutate_a2_1");
const mut2 = () => fixture<MutateResponse>("mutate_a2_2");

describe("viewModel", () => {
  it("bundles parallel arrows with multiplicities", () => {
    const qp: QpDoc = {
      schema: "qpseed/1",
      vertices: ["v", "w"],
      arrows: [
        { id: "a", tail: "v", head: "w" },
        { id: "b", tail: "v", head: "w" },
        { id: "c", tail: "w", head: "v" },
      ],
      potential: [],
    };
    expect(viewModel(qp).bundles).toEqual([
      ["v", "w", 2],
      ["w", "v", 1],
    ]);
  });

  it("ignores arrow ids, so a double mutation looks like the original", () => {
    expect(viewEqual(a2(), mut2().qp)).toBe(true);
    expect(viewEqual(a2(), mut1().qp)).toBe(false);
  });

  it("keeps potential signs and cycles in the served order", () => {
    const t33 = fixture<QpDoc>("qp_t33");
    const terms = viewModel(t33).terms;
    expect(terms).toHaveLength(2);
    const coefs = terms.map((t) => t[0]).sort();
    expect(coefs).toEqual(["-1", "1"]);
  });
});

describe("Session", () => {
  it("starts at the root with an empty word", () => {
    const session = new Session(a2(), "1 1 1", 2);
    expect(session.current).toEqual(a2());
    expect(session.word()).toEqual([]);
    expect(session.lastLog).toBeNull();
    expect(session.lastFlags).toBeNull();
  });

  it("push and undo move along the history stack", () => {
    const session = new Session(a2());
    session.push("L1#1", mut1());
    expect(session.current).toEqual(mut1().qp);
    expect(session.word()).toEqual(["L1#1"]);
    expect(session.lastLog?.vertex).toBe("L1#1");

    session.push("L1#1", mut2());
    expect(session.word()).toEqual(["L1#1", "L1#1"]);
    expect(viewEqual(session.current, a2())).toBe(true);

    expect(session.undo()).toBe(true);
    expect(session.current).toEqual(mut1().qp);
    expect(session.undo()).toBe(true);
    expect(session.current).toEqual(a2());
    expect(session.undo()).toBe(false);
  });

  it("layout positions never affect the view model", () => {
    const session = new Session(a2());
    const before = JSON.stringify(viewModel(session.current));
    session.positions.set("L1#1", { x: 12, y: 34, pinned: true });
    expect(JSON.stringify(viewModel(session.current))).toBe(before);
  });

  it("replay through the server reproduces the stored current QP", async () => {
    const api = new ApiClient("", fixtureFetch());
    const session = new Session(a2(), "1 1 1", 2);
    session.push("L1#1", mut1());
    session.push("L1#1", mut2());
    expect(await session.replay(api)).toBe(true);
  });

  it("replay flags a tampered session", async () => {
    const api = new ApiClient("", fixtureFetch());
    const session = new Session(a2());
    const fake = mut1();
    fake.qp.arrows[0]!.tail = "L1#1";
    fake.qp.arrows[0]!.head = "L1#2";
    session.push("L1#1", fake);
    expect(await session.replay(api)).toBe(false);
  });
});
