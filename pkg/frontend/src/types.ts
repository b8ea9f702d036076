// Wire types mirroring the analysis API's JSON schemas.

export type WarningLevelValue = 'A' | 'B' | 'C' | 'D' | 'E' | 'F';
export type ViewName = 'jimple' | 'java';

export interface SliceRecord {
  id: number;
  source_sig: string;
  data_category: string;
  risk: number;
  warning_level: WarningLevelValue;
  node_count_jimple: number;
  node_count_java: number;
  truncated: boolean;
  timed_out: boolean;
  op_counts: Record<string, number>;
  pseudo_summary: { present: boolean; weakest_strength: string | null };
}

export interface Report {
  program_name: string;
  options: {
    include_control: boolean;
    max_nodes: number | null;
    risk_filter: number[] | null;
    time_budget_secs: number | null;
  };
  slices: SliceRecord[];
  totals: {
    count_by_level: Record<WarningLevelValue, number>;
    count_by_risk: Record<string, number>;
  };
}

export interface GraphLabel {
  type: 'source' | 'method';
  category: string;
  risk?: number;
  strength?: string;
}

export interface GraphNode {
  id: number;
  text: string;
  kind: string;
  labels: GraphLabel[];
}

export interface GraphEdge {
  src: number;
  dst: number;
  kind: 'data' | 'control+data';
}

export interface GraphDoc {
  view: ViewName;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface JobStatus {
  status?: 'pending' | 'running' | 'error';
  error_message?: string;
}

export interface AnalysisOptions {
  include_control: boolean;
  max_nodes: number | null;
  time_budget_secs: number | null;
  risk_filter: number[] | null;
}
