// Typed client for the session API.  The explorer holds no math of its own:
// every piece of displayed state comes verbatim from these endpoints.

export interface VertexState {
  id: number;
  label: string;
  parity: "even" | "odd";
  frozen: boolean;
}

export interface ArrowState {
  src: number;
  dst: number;
  mult: number;
}

export interface LoopState {
  vertex: number;
  count: number;
}

export interface QuiverState {
  vertices: VertexState[];
  arrows: ArrowState[];
  loops: LoopState[];
  text: string;
  conditions: {
    c1: boolean;
    c2: boolean;
    per_vertex: { label: string; c1: boolean; c2: boolean }[];
  };
}

export interface ValueState {
  text: string;
  num_terms: { coefficient: string; exponents: number[]; odd: number[] }[];
  den_mono: number[];
  den_factors: { coefficient: string; exponents: number[]; odd: number[] }[][];
}

export interface MoveRequest {
  kind: "even" | "odd";
  vertex: string;
  mode?: "algebra" | "quiver";
}

export interface SessionState {
  session_id: string;
  quiver: QuiverState;
  values: Record<string, ValueState>;
  legal_moves: { kind: string; vertex: string }[];
  history: MoveRequest[];
  can_undo: boolean;
  can_redo: boolean;
  exchange_relation?: string;
  new_value?: string;
}

export interface LaurentCertificate {
  vertex: string;
  value: string;
  laurent: boolean;
  witness: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  models(): Promise<{ models: string[] }> {
    return request(`${this.base}/api/models`);
  }

  createSession(body: {
    model_name?: string;
    quiver_text?: string;
  }): Promise<SessionState> {
    return request(`${this.base}/api/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getSession(sid: string): Promise<SessionState> {
    return request(`${this.base}/api/sessions/${sid}`);
  }

  mutate(sid: string, move: MoveRequest): Promise<SessionState> {
    return request(`${this.base}/api/sessions/${sid}/mutate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(move),
    });
  }

  undo(sid: string): Promise<SessionState> {
    return request(`${this.base}/api/sessions/${sid}/undo`, { method: "POST" });
  }

  redo(sid: string): Promise<SessionState> {
    return request(`${this.base}/api/sessions/${sid}/redo`, { method: "POST" });
  }

  laurent(sid: string, vertex: string): Promise<LaurentCertificate> {
    return request(`${this.base}/api/sessions/${sid}/laurent/${vertex}`);
  }
}
