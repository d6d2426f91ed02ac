import { describe, expect, it } from "vitest";

import { DraftStore, MemoryStorage } from "../src/drafts.js";
import { ALL_PARAMETERS } from "./fixtures.js";

const TASK = "doc1:0";
const LABELS = ["A", "B"] as const;

describe("DraftStore basics", () => {
  it("returns null for a control that was never rated", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    expect(drafts.get(TASK, "A", 1)).toBeNull();
  });

  it("stores and overwrites a rating per (label, parameter)", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    drafts.set(TASK, "A", 3, 4);
    expect(drafts.get(TASK, "A", 3)).toBe(4);
    drafts.set(TASK, "A", 3, 2);
    expect(drafts.get(TASK, "A", 3)).toBe(2);
    expect(drafts.get(TASK, "B", 3)).toBeNull(); // other label untouched
  });

  it("rejects ratings outside 1..5", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    expect(() => drafts.set(TASK, "A", 1, 0)).toThrow(RangeError);
    expect(() => drafts.set(TASK, "A", 1, 6)).toThrow(RangeError);
    expect(() => drafts.set(TASK, "A", 1, 3.5)).toThrow(RangeError);
  });
});

describe("drafts survive a page reload", () => {
  it("a fresh store over the same storage sees the same picks", () => {
    const storage = new MemoryStorage();
    const before = new DraftStore(storage, "j1");
    before.set(TASK, "A", 1, 5);
    before.set(TASK, "B", 10, 2);

    const afterReload = new DraftStore(storage, "j1"); // same browser session
    expect(afterReload.get(TASK, "A", 1)).toBe(5);
    expect(afterReload.get(TASK, "B", 10)).toBe(2);
  });

  it("drafts are scoped per judge", () => {
    const storage = new MemoryStorage();
    new DraftStore(storage, "j1").set(TASK, "A", 1, 5);
    expect(new DraftStore(storage, "j2").get(TASK, "A", 1)).toBeNull();
  });

  it("a corrupt stored draft degrades to an empty one", () => {
    const storage = new MemoryStorage();
    const drafts = new DraftStore(storage, "j1");
    drafts.set(TASK, "A", 1, 5);
    storage.setItem(`annotate-ui/draft/j1/${TASK}`, "{not json");
    expect(drafts.get(TASK, "A", 1)).toBeNull();
  });
});

describe("the submit gate", () => {
  it("is closed until every label x parameter control is rated", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    for (const label of LABELS) {
      for (const parameter of ALL_PARAMETERS) {
        drafts.set(TASK, label, parameter, 3);
      }
    }
    expect(drafts.isComplete(TASK, LABELS, ALL_PARAMETERS)).toBe(true);
  });

  it("one missing parameter keeps it closed", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    for (const label of LABELS) {
      for (const parameter of ALL_PARAMETERS) {
        if (label === "B" && parameter === 8) {
          continue; // punctuation left unrated on system B
        }
        drafts.set(TASK, label, parameter, 3);
      }
    }
    expect(drafts.isComplete(TASK, LABELS, ALL_PARAMETERS)).toBe(false);
  });

  it("ratings on another task do not open this task's gate", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    for (const label of LABELS) {
      for (const parameter of ALL_PARAMETERS) {
        drafts.set("doc1:1", label, parameter, 3);
      }
    }
    expect(drafts.isComplete(TASK, LABELS, ALL_PARAMETERS)).toBe(false);
  });
});

describe("entries and clear", () => {
  it("entries lists every draft in label-then-parameter order", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    drafts.set(TASK, "B", 2, 1);
    drafts.set(TASK, "A", 10, 5);
    drafts.set(TASK, "A", 2, 4);
    expect(drafts.entries(TASK)).toEqual([
      { label: "A", parameter: 2, rating: 4 },
      { label: "A", parameter: 10, rating: 5 },
      { label: "B", parameter: 2, rating: 1 },
    ]);
  });

  it("clear removes exactly one task's drafts", () => {
    const drafts = new DraftStore(new MemoryStorage(), "j1");
    drafts.set(TASK, "A", 1, 3);
    drafts.set("doc1:1", "A", 1, 4);
    drafts.clear(TASK);
    expect(drafts.get(TASK, "A", 1)).toBeNull();
    expect(drafts.get("doc1:1", "A", 1)).toBe(4);
  });
});
