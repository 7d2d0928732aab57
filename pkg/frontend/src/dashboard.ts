/**
 * Results dashboard: a view model copied field-for-field from solution JSON
 * plus HTML rendering.  The only arithmetic performed here is formatting
 * the satisfaction fraction as a percentage.
 */

import type { PlanReportJson, SolutionJson } from "./types.js";

export interface DashboardView {
  solutionId: string;
  model: string;
  totalTransported: number;
  demandTotal: number;
  satisfactionPct: string;
  modalSplit: { commercial: number; generalAviation: number; direct: number };
  spend: { fares: string; rideHail: string; total: string };
  budgetUnused: string;
  gaSeatsUnused: number;
  gaAircraftUnused: number;
  originVehiclesUnused: Array<[string, number]>;
  destinationVehiclesUnused: Array<[string, number]>;
  commercialSeatsUnused: Array<[string, number]>;
  clinicCapacityUnused: Array<[string, number]>;
  perCounty: Array<[string, number]>;
  perClinic: Array<[string, number]>;
}

export interface MinCostView {
  status: "optimal" | "infeasible";
  /** Present when optimal: the minimum funding figure, verbatim. */
  minimumFunding?: string;
  /** Present when infeasible: why demand cannot be met. */
  maxFlowTotal?: number;
  demandTotal?: number;
}

const sortedEntries = (record: Record<string, number>): Array<[string, number]> =>
  Object.entries(record).sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0));

export function formatSatisfaction(fraction: number): string {
  return `${(fraction * 100).toFixed(1)}%`;
}

export function buildDashboard(solution: SolutionJson): DashboardView {
  if (!solution.report) {
    throw new Error(`solution ${solution.id} has no report to display`);
  }
  const report: PlanReportJson = solution.report;
  return {
    solutionId: solution.id,
    model: solution.model,
    totalTransported: report.total_transported,
    demandTotal: report.demand_total,
    satisfactionPct: formatSatisfaction(report.satisfaction),
    modalSplit: {
      commercial: report.modal_split.commercial,
      generalAviation: report.modal_split.general_aviation,
      direct: report.modal_split.direct,
    },
    spend: {
      fares: report.spend.fares,
      rideHail: report.spend.ride_hail,
      total: report.spend.total,
    },
    budgetUnused: report.excess.budget_unused,
    gaSeatsUnused: report.excess.ga_seats_unused,
    gaAircraftUnused: report.excess.ga_aircraft_unused,
    originVehiclesUnused: sortedEntries(report.excess.origin_vehicles_unused),
    destinationVehiclesUnused: sortedEntries(report.excess.destination_vehicles_unused),
    commercialSeatsUnused: sortedEntries(report.excess.commercial_seats_unused),
    clinicCapacityUnused: sortedEntries(report.excess.clinic_capacity_unused),
    perCounty: sortedEntries(report.per_county),
    perClinic: sortedEntries(report.per_clinic),
  };
}

export function buildMinCostView(solution: SolutionJson): MinCostView {
  if (solution.status === "optimal" && solution.report) {
    return { status: "optimal", minimumFunding: solution.report.spend.total };
  }
  return {
    status: "infeasible",
    maxFlowTotal: solution.diagnostic?.max_flow_total,
    demandTotal: solution.diagnostic?.demand_total,
  };
}

const escapeHtml = (value: string): string =>
  value
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");

function pairTable(caption: string, rows: Array<[string, number]>): string {
  if (rows.length === 0) {
    return `<table><caption>${escapeHtml(caption)}</caption><tr><td>none</td></tr></table>`;
  }
  const body = rows
    .map(([key, value]) => `<tr><td>${escapeHtml(key)}</td><td>${value}</td></tr>`)
    .join("");
  return `<table><caption>${escapeHtml(caption)}</caption>${body}</table>`;
}

export function renderDashboard(view: DashboardView): string {
  return `
<section class="dashboard" data-solution="${escapeHtml(view.solutionId)}">
  <h2>Plan for today (${escapeHtml(view.model)})</h2>
  <div class="headline">
    <div class="stat"><span class="value" id="total-transported">${view.totalTransported}</span>
      <span class="label">people transported of ${view.demandTotal} asking</span></div>
    <div class="stat"><span class="value" id="satisfaction">${view.satisfactionPct}</span>
      <span class="label">demand satisfied</span></div>
    <div class="stat"><span class="value" id="spend-total">$${view.spend.total}</span>
      <span class="label">spent ($${view.spend.fares} fares, $${view.spend.rideHail} ride hail)</span></div>
    <div class="stat"><span class="value" id="budget-unused">$${view.budgetUnused}</span>
      <span class="label">budget unused</span></div>
  </div>
  <div class="modal-split">
    <h3>How people traveled</h3>
    <div class="bar">
      <span class="commercial" id="split-commercial">${view.modalSplit.commercial} commercial</span>
      <span class="general" id="split-general">${view.modalSplit.generalAviation} small aircraft</span>
      <span class="direct" id="split-direct">${view.modalSplit.direct} direct drive</span>
    </div>
  </div>
  <div class="excess">
    <h3>Leftover resources</h3>
    <p>Small-aircraft seats unused: <b id="ga-seats-unused">${view.gaSeatsUnused}</b>
       (whole aircraft: ${view.gaAircraftUnused})</p>
    ${pairTable("Origin volunteer cars unused", view.originVehiclesUnused)}
    ${pairTable("Destination volunteer cars unused", view.destinationVehiclesUnused)}
    ${pairTable("Commercial seats unused", view.commercialSeatsUnused)}
    ${pairTable("Clinic capacity unused", view.clinicCapacityUnused)}
  </div>
  <div class="tables">
    ${pairTable("Transported per county", view.perCounty)}
    ${pairTable("Received per clinic", view.perClinic)}
  </div>
</section>`;
}

export function renderMinCost(view: MinCostView): string {
  if (view.status === "optimal") {
    return `<p class="min-cost" id="min-cost">Minimum funding required to move everyone:
      <b>$${escapeHtml(view.minimumFunding ?? "")}</b></p>`;
  }
  return `<p class="min-cost infeasible" id="min-cost">Demand cannot be fully met with
    these resources: only ${view.maxFlowTotal} of ${view.demandTotal} can travel.
    Add seats, drivers, or pilots and re-solve.</p>`;
}
