// Session store for the explorer.  Wraps the API client with the bits of
// view logic that are still math-free: the exploration history tree, the
// algebra/quiver mode toggle, the exchange-relation log, and the
// fixture-comparison banner.

import { ApiClient, ApiError, MoveRequest, SessionState } from "./api";

export type Mode = "algebra" | "quiver";

export interface HistoryNode {
  id: number;
  move: MoveRequest | null; // null at the root
  parent: number | null;
  children: number[];
}

export interface Banner {
  kind: "info" | "match" | "error";
  text: string;
}

/** Tracks every state visited in this session as a tree of moves. */
export class HistoryTree {
  nodes: HistoryNode[] = [{ id: 0, move: null, parent: null, children: [] }];
  cursor = 0;

  advance(move: MoveRequest): number {
    const here = this.nodes[this.cursor];
    for (const childId of here.children) {
      const child = this.nodes[childId];
      if (
        child.move!.vertex === move.vertex &&
        child.move!.kind === move.kind &&
        (child.move!.mode ?? "algebra") === (move.mode ?? "algebra")
      ) {
        this.cursor = childId;
        return childId;
      }
    }
    const node: HistoryNode = {
      id: this.nodes.length,
      move,
      parent: here.id,
      children: [],
    };
    this.nodes.push(node);
    here.children.push(node.id);
    this.cursor = node.id;
    return node.id;
  }

  /** Moves from the root down to the given node. */
  pathTo(id: number): MoveRequest[] {
    const path: MoveRequest[] = [];
    let node: HistoryNode | null = this.nodes[id];
    while (node && node.move) {
      path.push(node.move);
      node = node.parent === null ? null : this.nodes[node.parent];
    }
    return path.reverse();
  }
}

export class Explorer {
  state: SessionState | null = null;
  mode: Mode = "algebra";
  modelName: string | null = null;
  tree = new HistoryTree();
  exchangeLog: string[] = [];
  banner: Banner | null = null;

  constructor(public api: ApiClient) {}

  get sid(): string {
    if (!this.state) throw new Error("no session loaded");
    return this.state.session_id;
  }

  async loadModel(name: string): Promise<SessionState> {
    this.state = await this.api.createSession({ model_name: name });
    this.modelName = name;
    this.tree = new HistoryTree();
    this.exchangeLog = [];
    this.banner = { kind: "info", text: `loaded ${name}` };
    return this.state;
  }

  async loadQuiverText(text: string): Promise<SessionState> {
    this.state = await this.api.createSession({ quiver_text: text });
    this.modelName = null;
    this.tree = new HistoryTree();
    this.exchangeLog = [];
    this.banner = null;
    return this.state;
  }

  /** Click handler: mutate at a vertex; 409 diagnostics surface as banner. */
  async clickMutate(vertex: string): Promise<SessionState> {
    const v = this.state?.quiver.vertices.find((w) => w.label === vertex);
    if (!v) throw new Error(`no vertex ${vertex}`);
    const move: MoveRequest = { kind: v.parity, vertex, mode: this.mode };
    try {
      this.state = await this.api.mutate(this.sid, move);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.banner = { kind: "error", text: err.detail };
      }
      throw err;
    }
    this.tree.advance(move);
    if (this.state.exchange_relation) {
      this.exchangeLog.push(this.state.exchange_relation);
    }
    this.banner = null;
    return this.state;
  }

  async undo(): Promise<SessionState> {
    this.state = await this.api.undo(this.sid);
    const parent = this.tree.nodes[this.tree.cursor].parent;
    if (parent !== null) this.tree.cursor = parent;
    return this.state;
  }

  async redo(): Promise<SessionState> {
    this.state = await this.api.redo(this.sid);
    const moves = this.state.history;
    const last = moves[moves.length - 1];
    if (last) this.tree.advance(last);
    return this.state;
  }

  /** Jump to any history-tree node by replaying its move path from the root. */
  async jumpTo(nodeId: number): Promise<SessionState> {
    if (!this.modelName) throw new Error("history jump needs a named model");
    let state = await this.api.createSession({ model_name: this.modelName });
    for (const move of this.tree.pathTo(nodeId)) {
      state = await this.api.mutate(state.session_id, move);
    }
    this.state = state;
    this.tree.cursor = nodeId;
    return state;
  }

  /** Current quiver in the text format understood by the service. */
  exportQuiver(): string {
    if (!this.state) throw new Error("no session loaded");
    return this.state.quiver.text;
  }

  /**
   * Compares the current quiver against a named fixture, by the server's own
   * canonical text rendering; sets the banner on a match.
   */
  async compareWithModel(name: string): Promise<boolean> {
    const reference = await this.api.createSession({ model_name: name });
    const match = this.state?.quiver.text === reference.quiver.text;
    this.banner = match
      ? { kind: "match", text: `matches ${name}` }
      : { kind: "info", text: `differs from ${name}` };
    return match;
  }

  laurentBadge(vertex: string) {
    return this.api.laurent(this.sid, vertex);
  }
}
