import { execFile } from "node:child_process";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";
import { Explorer } from "../src/explorer";
import { RunningService, startService } from "./service";

const run = promisify(execFile);

let service: RunningService;

beforeAll(async () => {
  service = await startService();
}, 30_000);

afterAll(() => {
  service.stop();
});

function freshExplorer(): Explorer {
  return new Explorer(new ApiClient(service.base));
}

describe("value panel", () => {
  it("clicking a on spo21 shows the same value as the command line", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("spo21");
    const state = await explorer.clickMutate("a");

    const cli = await run(
      "python3",
      ["-m", "superclusters.cli", "mutate", "spo21", "--seq", "mu:a", "--json"],
      { cwd: ".." },
    );
    const payload = JSON.parse(cli.stdout).payload;
    expect(state.values["a"].text).toBe(payload.values.a.text);
    expect(state.values["a"].text).toBe("(1 + b*c + al*be)/a");
    expect(explorer.exchangeLog).toContain("a * a' = 1 + b*c + al*be");
  }, 20_000);
});

describe("fixture comparison banner", () => {
  it("flipQ click sequence in quiver mode matches flipQprime", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("flipQ");
    explorer.mode = "quiver";
    await explorer.clickMutate("v1");
    await explorer.clickMutate("v2");
    await explorer.clickMutate("v4");
    const match = await explorer.compareWithModel("flipQprime");
    expect(match).toBe(true);
    expect(explorer.banner).toEqual({ kind: "match", text: "matches flipQprime" });
  }, 20_000);

  it("reports a non-match before the sequence finishes", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("flipQ");
    explorer.mode = "quiver";
    await explorer.clickMutate("v1");
    expect(await explorer.compareWithModel("flipQprime")).toBe(false);
  }, 20_000);
});

describe("algebra-mode parity enforcement", () => {
  it("a mixed even/odd sequence is rejected with a diagnostic", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("spo21");
    await explorer.clickMutate("a");
    let caught: unknown;
    try {
      await explorer.clickMutate("al");
    } catch (err) {
      caught = err;
    }
    expect(caught).toBeInstanceOf(ApiError);
    expect((caught as ApiError).status).toBe(409);
    expect(explorer.banner?.kind).toBe("error");
    expect(explorer.banner?.text).toContain("mixed");
    // server state is untouched by the rejected move
    const state = await explorer.api.getSession(explorer.sid);
    expect(state.history).toHaveLength(1);
  }, 20_000);

  it("quiver mode allows the same mixed sequence", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("spo21");
    explorer.mode = "quiver";
    await explorer.clickMutate("a");
    const state = await explorer.clickMutate("al");
    expect(state.history).toHaveLength(2);
  }, 20_000);
});

describe("history", () => {
  it("undo and redo walk the linear history", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("spo21");
    await explorer.clickMutate("a");
    const undone = await explorer.undo();
    expect(undone.values["a"].text).toBe("a");
    const redone = await explorer.redo();
    expect(redone.values["a"].text).toBe("(1 + b*c + al*be)/a");
  }, 20_000);

  it("jumping to a tree node replays its path from the start", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("spo21");
    await explorer.clickMutate("a");
    const mutated = explorer.state!.values["a"].text;
    await explorer.undo();
    // branch: odd move from the root in a fresh algebra run
    await explorer.clickMutate("al");
    expect(explorer.tree.nodes).toHaveLength(3);
    const back = await explorer.jumpTo(1);
    expect(back.values["a"].text).toBe(mutated);
  }, 20_000);

  it("exported quiver text round-trips through session creation", async () => {
    const explorer = freshExplorer();
    await explorer.loadModel("grassmannian");
    const text = explorer.exportQuiver();
    const clone = freshExplorer();
    await clone.loadQuiverText(text);
    expect(clone.exportQuiver()).toBe(text);
  }, 20_000);
});
