// Dashboard state machine. Rendering subscribes to this store; all server
// traffic funnels through here so the invariants are enforceable:
//   - totals shown on screen are the report's totals verbatim,
//   - the slice table keeps the report's severe-first ordering,
//   - switching Jimple/Java view never re-submits an analysis (both views
//     of the selected slice are fetched once from the finished job).

import { ApiClient, isReport } from './api.js';
import type {
  AnalysisOptions, GraphDoc, Report, SliceRecord, ViewName,
} from './types.js';

export type Phase = 'idle' | 'submitting' | 'waiting' | 'loaded' | 'failed';

export interface UiState {
  programs: string[];
  selectedProgram: string | null;
  options: AnalysisOptions;
  phase: Phase;
  jobId: string | null;
  report: Report | null;
  error: string | null;
  selectedSlice: number | null;
  activeView: ViewName;
  graphs: Partial<Record<ViewName, GraphDoc>>;
}

export function initialState(): UiState {
  return {
    programs: [],
    selectedProgram: null,
    options: {
      include_control: true,
      max_nodes: null,
      time_budget_secs: null,
      risk_filter: null,
    },
    phase: 'idle',
    jobId: null,
    report: null,
    error: null,
    selectedSlice: null,
    activeView: 'jimple',
    graphs: {},
  };
}

type Listener = (state: UiState) => void;

export class Store {
  state: UiState = initialState();
  private listeners: Listener[] = [];
  private pollDelayMs = 1000;

  constructor(
    private client: ApiClient,
    private sleep: (ms: number) => Promise<void> = (ms) =>
      new Promise((resolve) => setTimeout(resolve, ms)),
  ) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  private patch(changes: Partial<UiState>): void {
    this.state = { ...this.state, ...changes };
    this.emit();
  }

  async loadPrograms(): Promise<void> {
    const { programs } = await this.client.listPrograms();
    this.patch({ programs, selectedProgram: programs[0] ?? null });
  }

  setProgram(name: string): void {
    this.patch({ selectedProgram: name });
  }

  setOptions(options: AnalysisOptions): void {
    this.patch({ options });
  }

  /** Submit the selected program with the current options and poll with
   * backoff until the report arrives. */
  async runAnalysis(): Promise<void> {
    if (!this.state.selectedProgram) {
      return;
    }
    this.patch({
      phase: 'submitting', error: null, report: null,
      selectedSlice: null, graphs: {},
    });
    let jobId: string;
    try {
      jobId = await this.client.submit(this.state.selectedProgram, this.state.options);
    } catch (err) {
      this.patch({ phase: 'failed', error: describe(err) });
      return;
    }
    this.patch({ phase: 'waiting', jobId });

    let delay = this.pollDelayMs;
    for (;;) {
      let doc: Awaited<ReturnType<ApiClient['poll']>>;
      try {
        doc = await this.client.poll(jobId);
      } catch (err) {
        this.patch({ phase: 'failed', error: describe(err) });
        return;
      }
      if (isReport(doc)) {
        this.patch({ phase: 'loaded', report: doc });
        return;
      }
      if (doc.status === 'error') {
        this.patch({ phase: 'failed', error: doc.error_message ?? 'analysis failed' });
        return;
      }
      await this.sleep(delay);
      delay = Math.min(delay * 1.5, 5000);
    }
  }

  /** Fetch both views of a slice once; later view toggles are pure. */
  async selectSlice(sliceId: number): Promise<void> {
    if (this.state.jobId === null) {
      return;
    }
    const [jimple, java] = await Promise.all([
      this.client.slice(this.state.jobId, sliceId, 'jimple'),
      this.client.slice(this.state.jobId, sliceId, 'java'),
    ]);
    this.patch({ selectedSlice: sliceId, graphs: { jimple, java } });
  }

  /** Client-side only: swaps which already-fetched graph is displayed. */
  setView(view: ViewName): void {
    this.patch({ activeView: view });
  }

  activeGraph(): GraphDoc | null {
    return this.state.graphs[this.state.activeView] ?? null;
  }

  selectedRecord(): SliceRecord | null {
    if (this.state.report === null || this.state.selectedSlice === null) {
      return null;
    }
    return this.state.report.slices.find(
      (slice) => slice.id === this.state.selectedSlice) ?? null;
  }
}

/** Slice rows exactly as the report orders them (F -> A, then risk, then
 * signature); the dashboard must not re-derive its own ordering. */
export function sliceRows(report: Report): SliceRecord[] {
  return report.slices;
}

/** Badge counts straight from the report totals: no client recomputation. */
export function levelBadges(report: Report): Array<{ level: string; count: number }> {
  return ['A', 'B', 'C', 'D', 'E', 'F'].map((level) => ({
    level,
    count: report.totals.count_by_level[level as keyof typeof report.totals.count_by_level] ?? 0,
  }));
}

export function riskBars(report: Report): Array<{ tier: string; count: number }> {
  return Object.entries(report.totals.count_by_risk)
    .sort(([a], [b]) => Number(a) - Number(b))
    .map(([tier, count]) => ({ tier, count }));
}

function describe(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
