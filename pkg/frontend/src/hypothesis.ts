// Editable hypothesis draft: a tree of atoms and AND/OR groups that
// serializes to exactly the POST /hypothesis body schema and parses back
// without loss. Wildcards are "*"; an atom is valid with >= 2 bound
// positions.

export interface AtomDraft {
  kind: "atom";
  s: string;
  p: string;
  o: string;
}

export interface GroupDraft {
  kind: "group";
  op: "and" | "or";
  children: DraftNode[];
}

export type DraftNode = AtomDraft | GroupDraft;

export function atom(s = "*", p = "*", o = "*"): AtomDraft {
  return { kind: "atom", s, p, o };
}

export function group(op: "and" | "or", ...children: DraftNode[]): GroupDraft {
  return { kind: "group", op, children };
}

export function isBound(position: string): boolean {
  return position.trim() !== "" && position.trim() !== "*";
}

export function atomValid(node: AtomDraft): boolean {
  return [node.s, node.p, node.o].filter(isBound).length >= 2;
}

export function draftValid(node: DraftNode): boolean {
  if (node.kind === "atom") return atomValid(node);
  return node.children.length >= 2 && node.children.every(draftValid);
}

type WireAtom = { atom: { s: string; p: string; o: string } };
type WireGroup = { op: "and" | "or"; args: WireNode[] };
export type WireNode = WireAtom | WireGroup;

export function serialize(node: DraftNode): WireNode {
  if (node.kind === "atom") {
    return {
      atom: {
        s: isBound(node.s) ? node.s.trim() : "*",
        p: isBound(node.p) ? node.p.trim() : "*",
        o: isBound(node.o) ? node.o.trim() : "*",
      },
    };
  }
  return { op: node.op, args: node.children.map(serialize) };
}

export function parse(wire: WireNode): DraftNode {
  if ("atom" in wire) {
    return atom(wire.atom.s ?? "*", wire.atom.p ?? "*", wire.atom.o ?? "*");
  }
  return { kind: "group", op: wire.op, children: wire.args.map(parse) };
}

// tree edits used by the builder view (all return the same root for chaining)

export function addChild(parent: GroupDraft, child: DraftNode): GroupDraft {
  parent.children.push(child);
  return parent;
}

export function removeChild(parent: GroupDraft, index: number): GroupDraft {
  parent.children.splice(index, 1);
  return parent;
}

export function wrapInGroup(node: DraftNode, op: "and" | "or"): GroupDraft {
  return group(op, node, atom());
}
