import { describe, expect, it } from "vitest";

import {
  atom,
  atomValid,
  draftValid,
  group,
  parse,
  serialize,
} from "../src/hypothesis.js";
import { builderView } from "../src/views/builder.js";
import { fakeApi, flush, ok } from "./helpers.js";

describe("hypothesis drafts", () => {
  it("serializes to exactly the POST schema", () => {
    const draft = group(
      "and",
      atom("t:apobec3g", "t:relatedto", "t:hiv"),
      atom("t:apobec3g", "t:relatedto", "t:il27"),
    );
    expect(serialize(draft)).toEqual({
      op: "and",
      args: [
        { atom: { s: "t:apobec3g", p: "t:relatedto", o: "t:hiv" } },
        { atom: { s: "t:apobec3g", p: "t:relatedto", o: "t:il27" } },
      ],
    });
  });

  it("round-trips through the wire form without loss", () => {
    const draft = group(
      "or",
      atom("t:a", "t:p", "*"),
      group("and", atom("*", "t:p", "t:b"), atom("t:c", "t:q", "t:d")),
    );
    const wire = serialize(draft);
    expect(serialize(parse(wire))).toEqual(wire);
    expect(parse(wire)).toEqual(draft);
  });

  it("normalizes blanks to wildcards on serialization", () => {
    expect(serialize(atom(" t:a ", "", "t:b"))).toEqual({
      atom: { s: "t:a", p: "*", o: "t:b" },
    });
  });

  it("flags atoms with fewer than two bound positions", () => {
    expect(atomValid(atom("t:a", "*", "*"))).toBe(false);
    expect(atomValid(atom("t:a", "t:p", "*"))).toBe(true);
    expect(draftValid(group("and", atom("t:a", "t:p"), atom("*", "*", "*")))).toBe(false);
  });

  it("requires two children per group", () => {
    expect(draftValid({ kind: "group", op: "and", children: [atom("t:a", "t:p")] })).toBe(false);
  });
});

describe("builder view", () => {
  function fill(view: HTMLElement, selector: string, values: [string, string, string]) {
    const atoms = view.querySelectorAll(selector);
    atoms.forEach((node, i) => {
      const inputs = node.querySelectorAll("input");
      (["s", "p", "o"] as const).forEach((pos, j) => {
        const input = inputs[j] as HTMLInputElement;
        input.value = values[j] === "#" ? `t:${pos}${i}` : values[j];
        input.dispatchEvent(new Event("input"));
      });
    });
  }

  it("renders the API plausibility verbatim with evidence", async () => {
    const response = {
      plausibility: 0.09877154766200617,
      evidence: [
        { s: "t:apobec3g", p: "t:relatedto", o: "t:hiv", prov: "corpus:x", weight: 0.3174, relevance: 0.3174 },
      ],
    };
    const { api, requests } = fakeApi((url) => (url === "/hypothesis" ? ok(response) : ok([])));
    const view = builderView(api);
    document.body.replaceChildren(view.root);
    fill(view.root, ".atom-node", ["#", "t:relatedto", "#"]);
    await view.submit();
    expect(requests.filter((r) => r.url === "/hypothesis")).toHaveLength(1);
    expect(view.root.querySelector(".plausibility-value")?.textContent).toBe(
      String(response.plausibility),
    );
    expect(view.root.querySelector(".evidence-score")?.textContent).toBe(
      String(response.evidence[0].relevance),
    );
  });

  it("posts the serialized draft as the request body", async () => {
    const { api, requests } = fakeApi(() => ok({ plausibility: 0, evidence: [] }));
    const view = builderView(api);
    document.body.replaceChildren(view.root);
    fill(view.root, ".atom-node", ["#", "t:relatedto", "#"]);
    await view.submit();
    const body = requests.find((r) => r.url === "/hypothesis")?.body as { expr: unknown };
    expect(body.expr).toEqual(serialize(view.getDraft()));
  });

  it("disables submission while any atom is invalid", () => {
    const { api } = fakeApi(() => ok({ plausibility: 0, evidence: [] }));
    const view = builderView(api);
    document.body.replaceChildren(view.root);
    const button = view.root.querySelector(".submit-hypothesis") as HTMLButtonElement;
    expect(button.disabled).toBe(true); // fresh atoms are all-wildcard
    fill(view.root, ".atom-node", ["#", "t:relatedto", "#"]);
    expect(button.disabled).toBe(false);
  });

  it("clicking evidence feeds back into exploration", async () => {
    const response = {
      plausibility: 0.5,
      evidence: [{ s: "t:x", p: "t:p", o: "t:y", prov: "src", weight: 0.5, relevance: 0.5 }],
    };
    const { api } = fakeApi(() => ok(response));
    const opened: string[] = [];
    const view = builderView(api, (st) => opened.push(st.s));
    document.body.replaceChildren(view.root);
    fill(view.root, ".atom-node", ["#", "t:p", "#"]);
    await view.submit();
    (view.root.querySelector(".evidence-item") as HTMLElement).click();
    expect(opened).toEqual(["t:x"]);
  });
});
