/**
 * Scenario form state: defaults, client-side validation, serialization.
 *
 * The form serializes to exactly the POST /api/scenarios body; submission
 * stays disabled until validateForm returns no findings.
 */

import type { AirportRow, ClinicRow, CountyRow, ScenarioBody } from "./types.js";

export interface DriverEntry {
  countyId: string;
  countyName: string;
  drivers: number;
}

export interface ScenarioFormState {
  originState: string;
  destinationState: string;
  openClinicIds: string[];
  pilotsStandby: number;
  budget: number;
  maxAccessEgressMin: number;
  maxFlightMin: number;
  maxDirectMin: number;
  originDrivers: DriverEntry[];
  destinationDrivers: DriverEntry[];
  companions: boolean;
}

export interface FieldError {
  field: string;
  message: string;
}

export function emptyForm(): ScenarioFormState {
  return {
    originState: "",
    destinationState: "",
    openClinicIds: [],
    pilotsStandby: 0,
    budget: 0,
    maxAccessEgressMin: 120,
    maxFlightMin: 180,
    maxDirectMin: 300,
    originDrivers: [],
    destinationDrivers: [],
    companions: false,
  };
}

/** Driver rows for freshly loaded reference data, all counts zeroed. */
export function driverRows(counties: CountyRow[]): DriverEntry[] {
  return counties.map((c) => ({ countyId: c.id, countyName: c.name, drivers: 0 }));
}

/** Destination driver rows cover only counties that contain an airport. */
export function destinationDriverRows(
  counties: CountyRow[],
  airports: AirportRow[],
): DriverEntry[] {
  const withAirport = new Set(airports.map((a) => a.county_id));
  return driverRows(counties.filter((c) => withAirport.has(c.id)));
}

/**
 * The walkthrough preset: three volunteer drivers in every origin county,
 * ten in the destination hub county (the one with the most airports), one
 * pilot on standby, a $1500 budget, and 2h / 3h / 5h travel-time limits.
 */
export function demoDefaults(
  form: ScenarioFormState,
  clinics: ClinicRow[],
  destAirports: AirportRow[],
): ScenarioFormState {
  const perCounty = new Map<string, number>();
  for (const airport of destAirports) {
    perCounty.set(airport.county_id, (perCounty.get(airport.county_id) ?? 0) + 1);
  }
  let hub = "";
  let best = -1;
  for (const [county, count] of [...perCounty.entries()].sort()) {
    if (count > best) {
      hub = county;
      best = count;
    }
  }
  return {
    ...form,
    openClinicIds: clinics.map((c) => c.id),
    pilotsStandby: 1,
    budget: 1500,
    maxAccessEgressMin: 120,
    maxFlightMin: 180,
    maxDirectMin: 300,
    originDrivers: form.originDrivers.map((row) => ({ ...row, drivers: 3 })),
    destinationDrivers: form.destinationDrivers.map((row) => ({
      ...row,
      drivers: row.countyId === hub ? 10 : 0,
    })),
    companions: false,
  };
}

const nonNegativeInt = (value: number): boolean =>
  Number.isInteger(value) && value >= 0;

export function validateForm(form: ScenarioFormState): FieldError[] {
  const errors: FieldError[] = [];
  if (!form.originState) {
    errors.push({ field: "originState", message: "pick an origin state" });
  }
  if (!form.destinationState) {
    errors.push({ field: "destinationState", message: "pick a destination state" });
  }
  if (form.originState && form.originState === form.destinationState) {
    errors.push({
      field: "destinationState",
      message: "destination must differ from origin",
    });
  }
  if (!nonNegativeInt(form.pilotsStandby)) {
    errors.push({ field: "pilotsStandby", message: "must be a whole number >= 0" });
  }
  if (!(form.budget >= 0) || Number.isNaN(form.budget)) {
    errors.push({ field: "budget", message: "must be >= 0" });
  }
  for (const [field, value] of [
    ["maxAccessEgressMin", form.maxAccessEgressMin],
    ["maxFlightMin", form.maxFlightMin],
    ["maxDirectMin", form.maxDirectMin],
  ] as const) {
    if (!(value > 0)) {
      errors.push({ field, message: "must be > 0 minutes" });
    }
  }
  for (const row of [...form.originDrivers, ...form.destinationDrivers]) {
    if (!nonNegativeInt(row.drivers)) {
      errors.push({
        field: `drivers[${row.countyId}]`,
        message: "driver counts are whole numbers >= 0",
      });
    }
  }
  return errors;
}

export function toScenarioBody(form: ScenarioFormState): ScenarioBody {
  const pools = (rows: DriverEntry[]): Record<string, number> => {
    const out: Record<string, number> = {};
    for (const row of rows) {
      if (row.drivers > 0) {
        out[row.countyId] = row.drivers;
      }
    }
    return out;
  };
  return {
    origin_state: form.originState,
    destination_state: form.destinationState,
    open_clinic_ids: [...form.openClinicIds].sort(),
    pilots_standby: form.pilotsStandby,
    budget: form.budget,
    max_access_egress_min: form.maxAccessEgressMin,
    max_flight_min: form.maxFlightMin,
    max_direct_min: form.maxDirectMin,
    origin_drivers: pools(form.originDrivers),
    destination_drivers: pools(form.destinationDrivers),
    companions: form.companions,
  };
}

/** Map API error details back onto form fields for inline display. */
export function fieldErrorsFromApi(
  details: Array<Record<string, unknown>>,
): FieldError[] {
  return details.map((d) => ({
    field: String(d.field ?? ""),
    message: String(d.message ?? "invalid"),
  }));
}
