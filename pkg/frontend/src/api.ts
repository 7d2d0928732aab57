/** Thin typed client over the planning service HTTP API. */

import type {
  AirportRow,
  ClinicRow,
  CountyRow,
  CreatedScenario,
  ErrorBody,
  ModelKind,
  ScenarioBody,
  SolutionJson,
  StateRow,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

async function expectJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    const body = (await response.json()) as ErrorBody;
    throw new ApiError(response.status, body);
  }
  return (await response.json()) as T;
}

export class PlannerApi {
  constructor(private readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async states(): Promise<StateRow[]> {
    const body = await expectJson<{ rows: StateRow[] }>(
      await fetch(this.url("/api/reference/states")),
    );
    return body.rows;
  }

  async counties(state: string): Promise<CountyRow[]> {
    const body = await expectJson<{ rows: CountyRow[] }>(
      await fetch(this.url(`/api/reference/counties?state=${encodeURIComponent(state)}`)),
    );
    return body.rows;
  }

  async airports(state: string): Promise<AirportRow[]> {
    const body = await expectJson<{ rows: AirportRow[] }>(
      await fetch(this.url(`/api/reference/airports?state=${encodeURIComponent(state)}`)),
    );
    return body.rows;
  }

  async clinics(state: string): Promise<ClinicRow[]> {
    const body = await expectJson<{ rows: ClinicRow[] }>(
      await fetch(this.url(`/api/reference/clinics?state=${encodeURIComponent(state)}`)),
    );
    return body.rows;
  }

  async createScenario(body: ScenarioBody): Promise<CreatedScenario> {
    return expectJson<CreatedScenario>(
      await fetch(this.url("/api/scenarios"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
  }

  async solve(scenarioId: string, model: ModelKind): Promise<SolutionJson> {
    return expectJson<SolutionJson>(
      await fetch(
        this.url(`/api/scenarios/${encodeURIComponent(scenarioId)}/solve?model=${model}`),
        { method: "POST" },
      ),
    );
  }

  async solution(solutionId: string): Promise<SolutionJson> {
    return expectJson<SolutionJson>(
      await fetch(this.url(`/api/solutions/${encodeURIComponent(solutionId)}`)),
    );
  }
}
