/**
 * Wire types for the planning service API.
 *
 * These mirror the JSON the backend emits exactly; money fields arrive as
 * two-digit decimal strings and are displayed verbatim.
 */

export type ModelKind = "max_flow" | "min_cost";

export interface ScenarioBody {
  origin_state: string;
  destination_state: string;
  open_clinic_ids: string[];
  pilots_standby: number;
  budget: number;
  max_access_egress_min: number;
  max_flight_min: number;
  max_direct_min: number;
  origin_drivers: Record<string, number>;
  destination_drivers: Record<string, number>;
  companions: boolean;
  aircraft_capacity?: number;
  vehicle_capacity?: number;
  ride_hail_rate?: number;
  demand_overrides?: Record<string, number>;
}

export interface CreatedScenario {
  id: string;
  created_at: string;
  scenario: ScenarioBody;
}

export interface SpendJson {
  fares: string;
  ride_hail: string;
  total: string;
}

export interface ExcessJson {
  budget_unused: string;
  ga_seats_unused: number;
  ga_aircraft_unused: number;
  origin_vehicles_unused: Record<string, number>;
  destination_vehicles_unused: Record<string, number>;
  commercial_seats_unused: Record<string, number>;
  clinic_capacity_unused: Record<string, number>;
}

export interface PlanReportJson {
  total_transported: number;
  demand_total: number;
  satisfaction: number;
  modal_split: { commercial: number; general_aviation: number; direct: number };
  spend: SpendJson;
  excess: ExcessJson;
  per_county: Record<string, number>;
  per_clinic: Record<string, number>;
}

export interface SolutionJson {
  id: string;
  scenario_id: string;
  model: ModelKind;
  status: "optimal" | "infeasible";
  objective: number | null;
  report: PlanReportJson | null;
  diagnostic: { max_flow_total: number; demand_total: number } | null;
  solved_at: string;
  solve_ms: number;
}

export interface ErrorBody {
  code: string;
  message: string;
  details: Array<Record<string, unknown>>;
}

export interface StateRow {
  code: string;
  counties: number;
  airports: number;
  clinics: number;
}

export interface CountyRow {
  id: string;
  name: string;
  state: string;
  latitude: number;
  longitude: number;
  eligible_population: number;
}

export interface AirportRow {
  id: string;
  kind: "commercial" | "general";
  state: string;
  county_id: string;
  latitude: number;
  longitude: number;
}

export interface ClinicRow {
  id: string;
  name: string;
  state: string;
  county_id: string;
  latitude: number;
  longitude: number;
  capacity_per_day: number;
}
