// The six-tier warning scale: colors, messages, and legal notes per level.
// Badge color is a pure function of the level.

import type { WarningLevelValue } from './types.js';

export interface ScaleRow {
  color: 'green' | 'yellow' | 'red';
  severity: string;
  message: string;
  legalNote: string;
}

const MINIMIZATION = 'Possibility of data minimization (GDPR Article §4).';
const PROTECT_USAGE =
  'Ensure data protection according to GDPR Article §25. ' +
  'Document data usage for transparency.';
const PROTECT_SHARING =
  'Ensure data protection according to GDPR Article §25. ' +
  'Document data sharing for transparency.';

export const WARNING_SCALE: Record<WarningLevelValue, ScaleRow> = {
  A: {
    color: 'green',
    severity: 'Very low privacy risk',
    message: 'Data collection, but no processing operations.',
    legalNote: MINIMIZATION,
  },
  B: {
    color: 'green',
    severity: 'Low privacy risk',
    message: 'Data collection and string manipulations, but no other processing operations.',
    legalNote: MINIMIZATION,
  },
  C: {
    color: 'yellow',
    severity: 'Moderate privacy risk',
    message: 'At least one data storage or processing operation.',
    legalNote: PROTECT_USAGE,
  },
  D: {
    color: 'yellow',
    severity: 'Significant privacy risk',
    message: 'Multiple data storage or processing operations.',
    legalNote: PROTECT_USAGE,
  },
  E: {
    color: 'red',
    severity: 'High privacy risk',
    message: 'Data shared with third-party APIs at least once.',
    legalNote: PROTECT_SHARING,
  },
  F: {
    color: 'red',
    severity: 'Very high privacy risk',
    message: 'Data shared with third-party APIs multiple times.',
    legalNote: PROTECT_SHARING,
  },
};

export const LEVELS_SEVERE_FIRST: WarningLevelValue[] = ['F', 'E', 'D', 'C', 'B', 'A'];

export function levelColor(level: WarningLevelValue): string {
  return WARNING_SCALE[level].color;
}

// Edge colors from the slice-graph legend.
export const EDGE_COLORS: Record<'data' | 'control+data', string> = {
  data: '#2f6fd6',
  'control+data': '#2e9e44',
};
