// Researcher hypothesis builder: edit an AND/OR tree of atoms (typeahead
// term pickers backed by /search), submit, and read the plausibility plus
// per-atom evidence. Invalid atoms are flagged before submission; every
// displayed number comes verbatim from the API response.

import { ApiClient, StatementDoc } from "../api.js";
import { clear, el } from "../dom.js";
import {
  AtomDraft,
  DraftNode,
  GroupDraft,
  atom,
  atomValid,
  draftValid,
  group,
  serialize,
} from "../hypothesis.js";
import { renderNumber } from "../weights.js";

export interface BuilderView {
  root: HTMLElement;
  getDraft(): DraftNode;
  setDraft(node: DraftNode): void;
  submit(): Promise<void>;
}

export function builderView(
  api: ApiClient,
  onEvidence?: (st: StatementDoc) => void,
): BuilderView {
  let draft: DraftNode = group("and", atom(), atom());
  const tree = el("div", { class: "draft-tree" });
  const submitButton = el("button", { class: "submit-hypothesis" }, "Score hypothesis");
  const result = el("div", { class: "hypothesis-result hidden" });

  function renderTree(): void {
    clear(tree);
    tree.append(renderNode(draft, null, -1));
    (submitButton as HTMLButtonElement).disabled = !draftValid(draft);
  }

  function renderNode(node: DraftNode, parent: GroupDraft | null, index: number): HTMLElement {
    if (node.kind === "atom") return renderAtom(node, parent, index);
    const opSelect = el("select", { class: "op-select" }) as HTMLSelectElement;
    for (const op of ["and", "or"]) {
      const option = el("option", { value: op }, op.toUpperCase()) as HTMLOptionElement;
      if (op === node.op) option.selected = true;
      opSelect.append(option);
    }
    opSelect.addEventListener("change", () => {
      node.op = opSelect.value === "or" ? "or" : "and";
    });
    const children = el("div", { class: "group-children" });
    node.children.forEach((child, i) => children.append(renderNode(child, node, i)));
    const addAtom = el("button", { class: "add-atom" }, "+ atom");
    addAtom.addEventListener("click", () => {
      node.children.push(atom());
      renderTree();
    });
    const addGroup = el("button", { class: "add-group" }, "+ group");
    addGroup.addEventListener("click", () => {
      node.children.push(group(node.op === "and" ? "or" : "and", atom(), atom()));
      renderTree();
    });
    return el("div", { class: "group-node" }, opSelect, children, addAtom, addGroup);
  }

  function renderAtom(node: AtomDraft, parent: GroupDraft | null, index: number): HTMLElement {
    const fields = (["s", "p", "o"] as const).map((position) => {
      const input = el("input", {
        class: `atom-${position}`,
        placeholder: position === "p" ? "predicate or *" : `${position} term or *`,
        value: node[position],
      }) as HTMLInputElement;
      input.addEventListener("input", () => {
        node[position] = input.value;
        flag.className = `atom-flag ${atomValid(node) ? "valid" : "invalid"}`;
        (submitButton as HTMLButtonElement).disabled = !draftValid(draft);
      });
      attachTypeahead(api, input);
      return input;
    });
    const flag = el("span", {
      class: `atom-flag ${atomValid(node) ? "valid" : "invalid"}`,
      title: "atoms need at least two bound positions",
    });
    const row = el("div", { class: "atom-node" }, ...fields, flag);
    if (parent) {
      const remove = el("button", { class: "remove-atom" }, "×");
      remove.addEventListener("click", () => {
        parent.children.splice(index, 1);
        renderTree();
      });
      row.append(remove);
    }
    return row;
  }

  async function submit(): Promise<void> {
    if (!draftValid(draft)) return;
    result.className = "hypothesis-result";
    clear(result);
    try {
      const response = await api.hypothesis(serialize(draft));
      const evidenceList = el("ul", { class: "evidence" });
      for (const st of response.evidence) {
        const item = el(
          "li",
          { class: "evidence-item" },
          el("span", { class: "triple" }, `${st.s} ${st.p} ${st.o}`),
          " ",
          el("span", { class: "evidence-score" }, renderNumber(st.relevance ?? st.weight)),
        );
        item.addEventListener("click", () => onEvidence?.(st));
        evidenceList.append(item);
      }
      result.append(
        el("div", { class: "plausibility" }, "plausibility: ",
          el("span", { class: "plausibility-value" }, renderNumber(response.plausibility))),
        evidenceList,
      );
    } catch (err) {
      result.append(el("div", { class: "notice network" }, String(err)));
    }
  }

  submitButton.addEventListener("click", () => void submit());
  renderTree();
  const root = el("section", { class: "builder-view" }, tree, submitButton, result);
  return {
    root,
    getDraft: () => draft,
    setDraft: (node) => {
      draft = node;
      renderTree();
    },
    submit,
  };
}

function attachTypeahead(api: ApiClient, input: HTMLInputElement): void {
  const listId = `terms-${Math.random().toString(36).slice(2)}`;
  const datalist = el("datalist", { id: listId });
  input.setAttribute("list", listId);
  input.after(datalist as unknown as Node);
  let timer: ReturnType<typeof setTimeout> | null = null;
  input.addEventListener("input", () => {
    if (timer) clearTimeout(timer);
    const text = input.value.trim();
    if (!text || text === "*") return;
    timer = setTimeout(() => {
      api
        .search(text, 8)
        .then((docs) => {
          clear(datalist);
          const seen = new Set<string>();
          for (const doc of docs) {
            for (const term of doc.match_terms ?? []) {
              if (!seen.has(term)) {
                seen.add(term);
                datalist.append(el("option", { value: term }));
              }
            }
          }
        })
        .catch(() => undefined); // typeahead misses are not errors
    }, 150);
  });
}
