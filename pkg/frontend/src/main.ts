/**
 * Browser wiring: reference-driven pickers, the scenario form, and the
 * results dashboard.  One solve in flight at a time; submit stays disabled
 * while a request is pending or the form is invalid.
 */

import { ApiError, PlannerApi } from "./api.js";
import {
  demoDefaults,
  destinationDriverRows,
  driverRows,
  emptyForm,
  fieldErrorsFromApi,
  toScenarioBody,
  validateForm,
  type FieldError,
  type ScenarioFormState,
} from "./form.js";
import {
  buildDashboard,
  buildMinCostView,
  renderDashboard,
  renderMinCost,
} from "./dashboard.js";
import type { AirportRow, ClinicRow, CountyRow } from "./types.js";

const api = new PlannerApi("");

interface UiState {
  form: ScenarioFormState;
  clinics: ClinicRow[];
  originCounties: CountyRow[];
  destCounties: CountyRow[];
  destAirports: AirportRow[];
  scenarioId: string | null;
  solving: boolean;
  apiErrors: FieldError[];
}

const state: UiState = {
  form: emptyForm(),
  clinics: [],
  originCounties: [],
  destCounties: [],
  destAirports: [],
  scenarioId: null,
  solving: false,
  apiErrors: [],
};

const $ = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
};

async function loadStates(): Promise<void> {
  const states = await api.states();
  for (const id of ["origin-state", "destination-state"]) {
    const select = $<HTMLSelectElement>(id);
    select.innerHTML =
      `<option value="">pick a state</option>` +
      states
        .map((s) => `<option value="${s.code}">${s.code}</option>`)
        .join("");
  }
}

async function onOriginChange(code: string): Promise<void> {
  state.form.originState = code;
  state.originCounties = code ? await api.counties(code) : [];
  state.form.originDrivers = driverRows(state.originCounties);
  redraw();
}

async function onDestinationChange(code: string): Promise<void> {
  state.form.destinationState = code;
  if (code) {
    [state.clinics, state.destCounties, state.destAirports] = await Promise.all([
      api.clinics(code),
      api.counties(code),
      api.airports(code),
    ]);
  } else {
    state.clinics = [];
    state.destCounties = [];
    state.destAirports = [];
  }
  state.form.openClinicIds = [];
  state.form.destinationDrivers = destinationDriverRows(
    state.destCounties,
    state.destAirports,
  );
  redraw();
}

function numberInput(id: string, value: number, step = "1"): string {
  return `<input type="number" id="${id}" value="${value}" min="0" step="${step}">`;
}

function drawDriverRows(container: HTMLElement, rows: typeof state.form.originDrivers, prefix: string): void {
  container.innerHTML = rows
    .map(
      (row, i) => `
      <label class="driver-row">${row.countyName} (${row.countyId})
        <input type="number" min="0" step="1" value="${row.drivers}"
               data-kind="${prefix}" data-index="${i}">
      </label>`,
    )
    .join("");
}

function drawClinics(): void {
  const container = $("clinic-list");
  container.innerHTML = state.clinics
    .map(
      (c) => `
      <label class="clinic-row">
        <input type="checkbox" value="${c.id}"
               ${state.form.openClinicIds.includes(c.id) ? "checked" : ""}>
        ${c.name} (capacity ${c.capacity_per_day}/day)
      </label>`,
    )
    .join("");
}

function drawErrors(errors: FieldError[]): void {
  const box = $("form-errors");
  if (errors.length === 0) {
    box.innerHTML = "";
    return;
  }
  box.innerHTML =
    "<ul>" +
    errors.map((e) => `<li><b>${e.field}</b>: ${e.message}</li>`).join("") +
    "</ul>";
}

function redraw(): void {
  drawDriverRows($("origin-drivers"), state.form.originDrivers, "origin");
  drawDriverRows($("destination-drivers"), state.form.destinationDrivers, "destination");
  drawClinics();
  const errors = [...validateForm(state.form), ...state.apiErrors];
  drawErrors(errors);
  const submit = $<HTMLButtonElement>("submit");
  submit.disabled = validateForm(state.form).length > 0 || state.solving;
  $<HTMLButtonElement>("min-cost-button").disabled =
    state.scenarioId === null || state.solving;
}

function readNumbers(): void {
  state.form.pilotsStandby = Number($<HTMLInputElement>("pilots").value);
  state.form.budget = Number($<HTMLInputElement>("budget").value);
  state.form.maxAccessEgressMin = Number($<HTMLInputElement>("max-access").value);
  state.form.maxFlightMin = Number($<HTMLInputElement>("max-flight").value);
  state.form.maxDirectMin = Number($<HTMLInputElement>("max-direct").value);
  state.form.companions = $<HTMLInputElement>("companions").checked;
}

async function submitAndSolve(): Promise<void> {
  readNumbers();
  state.apiErrors = [];
  if (validateForm(state.form).length > 0) {
    redraw();
    return;
  }
  state.solving = true;
  redraw();
  try {
    const created = await api.createScenario(toScenarioBody(state.form));
    state.scenarioId = created.id;
    const solution = await api.solve(created.id, "max_flow");
    $("dashboard").innerHTML = renderDashboard(buildDashboard(solution));
    $("min-cost-result").innerHTML = "";
  } catch (err) {
    if (err instanceof ApiError) {
      state.apiErrors = fieldErrorsFromApi(err.body.details);
      if (state.apiErrors.length === 0) {
        state.apiErrors = [{ field: err.body.code, message: err.body.message }];
      }
    } else {
      state.apiErrors = [{ field: "network", message: String(err) }];
    }
  } finally {
    state.solving = false;
    redraw();
  }
}

async function solveMinCost(): Promise<void> {
  if (!state.scenarioId) return;
  state.solving = true;
  redraw();
  try {
    const solution = await api.solve(state.scenarioId, "min_cost");
    $("min-cost-result").innerHTML = renderMinCost(buildMinCostView(solution));
  } catch (err) {
    if (err instanceof ApiError && err.body.code === "min_cost_infeasible") {
      const detail = err.body.details[0] ?? {};
      $("min-cost-result").innerHTML = renderMinCost({
        status: "infeasible",
        maxFlowTotal: Number(detail.max_flow_total),
        demandTotal: Number(detail.demand_total),
      });
    } else {
      $("min-cost-result").innerHTML = `<p class="min-cost infeasible">${String(err)}</p>`;
    }
  } finally {
    state.solving = false;
    redraw();
  }
}

function wire(): void {
  $<HTMLSelectElement>("origin-state").addEventListener("change", (e) =>
    onOriginChange((e.target as HTMLSelectElement).value),
  );
  $<HTMLSelectElement>("destination-state").addEventListener("change", (e) =>
    onDestinationChange((e.target as HTMLSelectElement).value),
  );
  $("origin-drivers").addEventListener("input", (e) => {
    const input = e.target as HTMLInputElement;
    const i = Number(input.dataset.index);
    const row = state.form.originDrivers[i];
    if (row) row.drivers = Number(input.value);
  });
  $("destination-drivers").addEventListener("input", (e) => {
    const input = e.target as HTMLInputElement;
    const i = Number(input.dataset.index);
    const row = state.form.destinationDrivers[i];
    if (row) row.drivers = Number(input.value);
  });
  $("clinic-list").addEventListener("change", () => {
    state.form.openClinicIds = [
      ...$("clinic-list").querySelectorAll<HTMLInputElement>("input:checked"),
    ].map((i) => i.value);
    redraw();
  });
  $("demo-defaults").addEventListener("click", () => {
    state.form = demoDefaults(state.form, state.clinics, state.destAirports);
    $<HTMLInputElement>("pilots").value = String(state.form.pilotsStandby);
    $<HTMLInputElement>("budget").value = String(state.form.budget);
    $<HTMLInputElement>("max-access").value = String(state.form.maxAccessEgressMin);
    $<HTMLInputElement>("max-flight").value = String(state.form.maxFlightMin);
    $<HTMLInputElement>("max-direct").value = String(state.form.maxDirectMin);
    $<HTMLInputElement>("companions").checked = state.form.companions;
    redraw();
  });
  $("submit").addEventListener("click", () => void submitAndSolve());
  $("min-cost-button").addEventListener("click", () => void solveMinCost());
  ["pilots", "budget", "max-access", "max-flight", "max-direct", "companions"].forEach(
    (id) =>
      $(id).addEventListener("input", () => {
        readNumbers();
        redraw();
      }),
  );
}

void (async () => {
  wire();
  await loadStates();
  redraw();
})();
