/**
 * Local draft ratings for the task currently on screen.
 *
 * Drafts are keyed (task, blind label, parameter) and written through to
 * a Storage-like backend on every change, so a page reload mid-task
 * restores exactly what the judge had picked.  Nothing else persists
 * client-side: once a task's ratings are acknowledged by the server the
 * drafts are cleared, and the service's log is the source of truth.
 */

/** The subset of window.sessionStorage the store needs (injectable in tests). */
export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

/** In-memory stand-in used by tests and non-browser callers. */
export class MemoryStorage implements KeyValueStore {
  private readonly map = new Map<string, string>();

  getItem(key: string): string | null {
    return this.map.has(key) ? (this.map.get(key) as string) : null;
  }

  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }
}

const PREFIX = "annotate-ui/draft";

function draftKey(judgeId: string, taskId: string): string {
  return `${PREFIX}/${judgeId}/${taskId}`;
}

type DraftMap = Record<string, Record<string, number>>;

export class DraftStore {
  constructor(
    private readonly storage: KeyValueStore,
    private readonly judgeId: string,
  ) {}

  private read(taskId: string): DraftMap {
    const raw = this.storage.getItem(draftKey(this.judgeId, taskId));
    if (raw === null) {
      return {};
    }
    try {
      return JSON.parse(raw) as DraftMap;
    } catch {
      return {}; // a corrupt draft is just an empty one
    }
  }

  private write(taskId: string, drafts: DraftMap): void {
    this.storage.setItem(draftKey(this.judgeId, taskId), JSON.stringify(drafts));
  }

  /** Record one picked rating; overwrites any earlier pick for the same control. */
  set(taskId: string, label: string, parameter: number, rating: number): void {
    if (!Number.isInteger(rating) || rating < 1 || rating > 5) {
      throw new RangeError(`rating must be an integer in 1..5, got ${rating}`);
    }
    const drafts = this.read(taskId);
    const forLabel = drafts[label] ?? {};
    forLabel[String(parameter)] = rating;
    drafts[label] = forLabel;
    this.write(taskId, drafts);
  }

  get(taskId: string, label: string, parameter: number): number | null {
    const rating = this.read(taskId)[label]?.[String(parameter)];
    return rating === undefined ? null : rating;
  }

  /**
   * True when every (label, parameter) control has a rating — the submit
   * gate.  A task with two systems and ten parameters needs all twenty.
   */
  isComplete(taskId: string, labels: readonly string[], parameters: readonly number[]): boolean {
    const drafts = this.read(taskId);
    return labels.every((label) =>
      parameters.every((parameter) => drafts[label]?.[String(parameter)] !== undefined),
    );
  }

  /** Every drafted (label, parameter, rating) triple, in stable order. */
  entries(taskId: string): Array<{ label: string; parameter: number; rating: number }> {
    const drafts = this.read(taskId);
    const out: Array<{ label: string; parameter: number; rating: number }> = [];
    for (const label of Object.keys(drafts).sort()) {
      const forLabel = drafts[label] ?? {};
      for (const parameter of Object.keys(forLabel)
        .map(Number)
        .sort((a, b) => a - b)) {
        out.push({ label, parameter, rating: forLabel[String(parameter)] as number });
      }
    }
    return out;
  }

  /** Forget the task's drafts (after the server acknowledged all of them). */
  clear(taskId: string): void {
    this.storage.removeItem(draftKey(this.judgeId, taskId));
  }
}
