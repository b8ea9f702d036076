// Entry point: wires the store to the form and render targets.

import { ApiClient } from './api.js';
import {
  renderDocumentation, renderGraph, renderSidePanel, renderSliceTable,
  renderStatus, renderSummary,
} from './render.js';
import { Store } from './state.js';
import type { AnalysisOptions, ViewName } from './types.js';

const API_BASE = (window as { SLICETOOL_API?: string }).SLICETOOL_API
  ?? 'http://127.0.0.1:8734';

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function readOptions(): AnalysisOptions {
  const maxNodes = (byId<HTMLInputElement>('opt-max-nodes')).value;
  const timeout = (byId<HTMLInputElement>('opt-timeout')).value;
  const riskChecks = Array.from(
    document.querySelectorAll<HTMLInputElement>('input[name="risk"]:checked'),
  ).map((box) => Number(box.value));
  const allRiskBoxes = document.querySelectorAll<HTMLInputElement>('input[name="risk"]');
  return {
    include_control: byId<HTMLInputElement>('opt-control').checked,
    max_nodes: maxNodes === '' ? null : Number(maxNodes),
    time_budget_secs: timeout === '' ? null : Number(timeout),
    risk_filter: riskChecks.length === 0 || riskChecks.length === allRiskBoxes.length
      ? null : riskChecks,
  };
}

async function boot(): Promise<void> {
  const client = new ApiClient(API_BASE);
  const store = new Store(client);

  const programSelect = byId<HTMLSelectElement>('program-select');
  const summary = byId<HTMLElement>('summary');
  const table = byId<HTMLElement>('slice-table');
  const graph = byId<HTMLElement>('graph');
  const sidePanel = byId<HTMLElement>('side-panel');
  const status = byId<HTMLElement>('status');
  const viewToggle = byId<HTMLElement>('view-toggle');

  renderDocumentation(byId('documentation'));

  store.subscribe(() => {
    renderStatus(status, store);
    renderSummary(summary, store.state.report);
    renderSliceTable(table, store.state.report, store.state.selectedSlice,
      (id) => void store.selectSlice(id));
    renderGraph(graph, store.activeGraph(), store.selectedRecord());
    renderSidePanel(sidePanel, store.selectedRecord());
    for (const button of viewToggle.querySelectorAll<HTMLButtonElement>('button')) {
      button.classList.toggle('active', button.dataset.view === store.state.activeView);
    }
  });

  viewToggle.addEventListener('click', (event) => {
    const target = event.target as HTMLElement;
    const view = target.dataset.view as ViewName | undefined;
    if (view) {
      store.setView(view);  // pure client toggle: no analysis request
    }
  });

  byId<HTMLFormElement>('options-form').addEventListener('submit', (event) => {
    event.preventDefault();
    store.setProgram(programSelect.value);
    store.setOptions(readOptions());
    void store.runAnalysis();
  });

  await store.loadPrograms();
  programSelect.replaceChildren(...store.state.programs.map((name) => {
    const option = document.createElement('option');
    option.value = name;
    option.textContent = name;
    return option;
  }));
}

void boot();
