/**
 * Response shapes of the HTTP API the workbench talks to.
 *
 * Only the fields the UI reads are declared; extra fields the service
 * sends (e.g. provenance details) pass through untyped.
 */

export type Provenance = Record<string, unknown>;

export interface EmbeddingInfo {
  id: string;
  vocab_size: number;
  dim: number;
}

export interface EmbeddingsDoc {
  embeddings: EmbeddingInfo[];
  provenance: Provenance;
}

export interface CorpusInfo {
  id: string;
  docs: number;
  total_tokens: number;
}

export interface CorporaDoc {
  corpora: CorpusInfo[];
  provenance: Provenance;
}

export interface LmInfo {
  id: string;
  order: number;
  k: number;
  vocab_size: number;
}

export interface LmsDoc {
  lms: LmInfo[];
  provenance: Provenance;
}

export interface CollectionCount {
  collection: string;
  count: number;
  percent: number;
}

export interface FrequencyBin {
  lo: number;
  hi: number;
  tokens: number;
}

export interface FrequencyDoc {
  token: string;
  total_count: number;
  rank: number | null;
  per_collection: CollectionCount[];
  distribution: FrequencyBin[];
  token_bin: number | null;
  provenance: Provenance;
}

export interface ConcordanceLine {
  doc_id: string;
  collection: string;
  sentence: string;
  char_span: [number, number];
}

export interface ConcordanceDoc {
  token: string;
  lines: ConcordanceLine[];
  provenance: Provenance;
}

export interface ProjectionPoint {
  token: string;
  x: number;
  y: number;
  /** null for requested words; the query word that pulled in a neighbor. */
  source: string | null;
}

export interface ProjectionDoc {
  points: ProjectionPoint[];
  explained_variance: number[];
  missing: string[];
  provenance: Provenance;
}

export interface ResolvedList {
  name: string;
  words: string[];
  resolved: string[];
  missing: string[];
  language?: string;
}

export interface SpaceDoc {
  space: {
    key: string;
    method: string;
    embedding_id: string;
    a: ResolvedList;
    b: ResolvedList;
  };
  provenance: Provenance;
}

export interface WordScore {
  token: string;
  score: number;
}

export interface ScoresDoc {
  space: string;
  scores: WordScore[];
  missing: string[];
  provenance: Provenance;
}

export interface PlanePoint {
  token: string;
  x: number;
  y: number;
}

export interface Scores2dDoc {
  space_x: string;
  space_y: string;
  points: PlanePoint[];
  missing: string[];
  provenance: Provenance;
}

export interface RankedWordDoc {
  word: string;
  probability: number;
  log_probability: number;
}

export interface BlankDoc {
  template: string;
  ranked: RankedWordDoc[];
  provenance: Provenance;
}

export interface PairDoc {
  stereo: string;
  anti: string;
  stereo_score: number;
  anti_score: number;
  preference: number;
  tag: string | null;
  provenance: Provenance;
}

export interface SessionDoc {
  session: {
    session_id: string;
    name: string;
  };
  provenance: Provenance;
}

export interface SessionListDoc {
  list: { name: string; words: string[]; language?: string };
  provenance: Provenance;
}

export interface ManifestList {
  name: string;
  words: string[];
  language?: string;
}

export interface ManifestSpace {
  name: string;
  a: string;
  b: string;
  method?: string;
}

/** The portable session document; also what audit manifests are made of. */
export interface SessionManifest {
  seed: number;
  embeddings: { id: string; path: string }[];
  lists: ManifestList[];
  spaces: ManifestSpace[];
  words_of_interest: string[];
}

export interface ExportDoc {
  manifest: SessionManifest;
  provenance: Provenance;
}
