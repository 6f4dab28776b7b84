import init, { antenna_pattern, simulate_drop, tr_curve } from "./pkg/beamtrack_demo.js";

const COLORS = { TRBT: "#d62728", WoBT: "#7f7f7f", MNBT: "#1f77b4", MTBT: "#2ca02c" };
const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function showError(e) {
  $("error").textContent = e ? String(e) : "";
}

function guarded(fn) {
  return () => {
    try {
      showError(null);
      fn();
    } catch (e) {
      showError(e);
    }
  };
}

// Canvas helpers: math angles (counter-clockwise, radians) onto a y-down canvas.
function polar(cx, cy, scale, angle, r) {
  return [cx + scale * r * Math.cos(angle), cy - scale * r * Math.sin(angle)];
}

function wedge(ctx, cx, cy, radius, center, width) {
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.arc(cx, cy, radius, -(center + width / 2), -(center - width / 2));
  ctx.closePath();
}

function drawPattern() {
  const width = num("p-width");
  const gains = antenna_pattern(width, num("p-eps"), 720);
  const canvas = $("pattern");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);

  // Radial axis in dB, clipped 40 dB below the peak.
  const db = Array.from(gains, (g) => 10 * Math.log10(Math.max(g, 1e-12)));
  const peak = Math.max(...db);
  const floor = peak - 40;
  const R = w / 2 - 10;
  const rad = (d) => (R * (Math.max(d, floor) - floor)) / (peak - floor);

  ctx.strokeStyle = "#eee";
  for (let k = 1; k <= 4; k++) {
    ctx.beginPath();
    ctx.arc(w / 2, h / 2, (R * k) / 4, 0, 2 * Math.PI);
    ctx.stroke();
  }
  ctx.strokeStyle = COLORS.TRBT;
  ctx.lineWidth = 2;
  ctx.beginPath();
  db.forEach((d, i) => {
    const a = -Math.PI + (2 * Math.PI * i) / db.length;
    const [x, y] = polar(w / 2, h / 2, 1, a, rad(d));
    i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
  });
  ctx.closePath();
  ctx.stroke();
  ctx.lineWidth = 1;
  $("p-info").textContent =
    `main lobe ${peak.toFixed(2)} dBi, side lobe ${Math.min(...db).toFixed(2)} dBi (rings every 10 dB)`;
}

function drawDrop() {
  const view = JSON.parse(
    simulate_drop(BigInt(num("d-seed")), num("d-m"), num("d-width"), num("d-freq"), num("d-speed")),
  );
  const canvas = $("drop");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const cx = w / 2, cy = h / 2;
  const scale = (w / 2 - 10) / view.cell_radius;
  const R = scale * view.cell_radius;

  ctx.strokeStyle = "#ccc";
  ctx.beginPath();
  ctx.arc(cx, cy, R, 0, 2 * Math.PI);
  ctx.stroke();

  ctx.fillStyle = "rgba(0,0,0,0.05)";
  wedge(ctx, cx, cy, R, view.area_center, view.area_width);
  ctx.fill();

  for (const d of view.decisions) {
    if (d.covered === 0) continue;
    ctx.strokeStyle = COLORS[d.mechanism];
    ctx.setLineDash(d.mechanism === "WoBT" ? [4, 4] : []);
    wedge(ctx, cx, cy, R, d.direction, view.beamwidth);
    ctx.stroke();
  }
  ctx.setLineDash([]);

  const trbt = new Set(view.decisions.find((d) => d.mechanism === "TRBT").window);
  for (const ue of view.ues) {
    const [x0, y0] = polar(cx, cy, scale, ue.before[0], ue.before[1]);
    const [x1, y1] = polar(cx, cy, scale, ue.after[0], ue.after[1]);
    ctx.strokeStyle = "#999";
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.stroke();
    ctx.fillStyle = trbt.has(ue.id) ? COLORS.TRBT : ue.in_area ? "#333" : "#bbb";
    ctx.beginPath();
    ctx.arc(x1, y1, 3, 0, 2 * Math.PI);
    ctx.fill();
  }

  $("d-key").innerHTML = view.decisions
    .map((d) => `<span style="background:${COLORS[d.mechanism]}"></span>${d.mechanism}`)
    .join("");
  const rows = view.decisions
    .map(
      (d) =>
        `<tr><td>${d.mechanism}</td><td>${d.covered}</td>` +
        `<td>${(d.throughput_bps / 1e9).toFixed(3)}</td><td>${d.handoff_prob.toFixed(3)}</td>` +
        `<td>${d.tr.toFixed(3)}${d.all_covered ? "*" : ""}</td></tr>`,
    )
    .join("");
  $("d-table").innerHTML =
    "<tr><th></th><th>UEs</th><th>Gb/s</th><th>handoff</th><th>TR</th></tr>" + rows;
  $("d-info").textContent =
    `${view.candidates} candidate windows; TRBT-covered UEs in red, moves shown as grey lines. ` +
    "* = every UE covered (handoff probability floored).";
}

function drawCurve() {
  const t0 = performance.now();
  const view = JSON.parse(tr_curve(num("c-freq"), num("c-width"), num("c-trials"), BigInt(num("c-seed"))));
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);

  const pad = { l: 50, r: 90, t: 10, b: 35 };
  const xs = view.m;
  const ymax = Math.max(...view.series.flatMap(([, ys]) => ys)) * 1.1 || 1;
  const X = (m) => pad.l + ((m - xs[0]) / (xs[xs.length - 1] - xs[0])) * (w - pad.l - pad.r);
  const Y = (v) => h - pad.b - (v / ymax) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#333";
  ctx.fillStyle = "#333";
  ctx.beginPath();
  ctx.moveTo(pad.l, pad.t);
  ctx.lineTo(pad.l, h - pad.b);
  ctx.lineTo(w - pad.r, h - pad.b);
  ctx.stroke();
  ctx.textAlign = "center";
  for (const m of xs) ctx.fillText(m, X(m), h - pad.b + 14);
  ctx.fillText("UEs per beam", (pad.l + w - pad.r) / 2, h - 4);
  ctx.textAlign = "right";
  for (let k = 0; k <= 4; k++) {
    const v = (ymax * k) / 4;
    ctx.fillText(v.toFixed(1), pad.l - 6, Y(v) + 4);
  }

  ctx.textAlign = "left";
  view.series.forEach(([label, ys], i) => {
    const ci = view.ci[i][1];
    ctx.strokeStyle = ctx.fillStyle = COLORS[label];
    ctx.beginPath();
    ys.forEach((y, j) => (j === 0 ? ctx.moveTo(X(xs[j]), Y(y)) : ctx.lineTo(X(xs[j]), Y(y))));
    ctx.stroke();
    ys.forEach((y, j) => {
      ctx.beginPath();
      ctx.moveTo(X(xs[j]), Y(y - ci[j]));
      ctx.lineTo(X(xs[j]), Y(y + ci[j]));
      ctx.stroke();
    });
    ctx.fillText(label, w - pad.r + 8, Y(ys[ys.length - 1]) + 4);
  });
  $("c-info").textContent = `${(performance.now() - t0).toFixed(0)} ms, bars are 95% CI`;
}

await init();
const pattern = guarded(drawPattern);
const drop = guarded(drawDrop);
const curve = guarded(drawCurve);
for (const id of ["p-width", "p-eps"]) $(id).addEventListener("input", pattern);
for (const id of ["d-seed", "d-m", "d-width", "d-freq", "d-speed"]) $(id).addEventListener("input", drop);
$("d-next").addEventListener("click", () => {
  $("d-seed").value = num("d-seed") + 1;
  drop();
});
$("c-run").addEventListener("click", curve);
pattern();
drop();
curve();
