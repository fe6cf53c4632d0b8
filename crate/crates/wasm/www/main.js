import init, { sample_mixture, identify_peel, elbow_curve } from "./pkg/kfind_wasm.js";

const palette = ["#999", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];
const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
let points = null;

function status(text) {
  $("status").textContent = text;
}

function drawPoints(xy, labels) {
  const c = $("points");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  let lo = Infinity, hi = -Infinity;
  for (const v of xy) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
  const pad = 10, span = hi - lo || 1;
  const sx = (v) => pad + (v - lo) / span * (c.width - 2 * pad);
  const sy = (v) => c.height - pad - (v - lo) / span * (c.height - 2 * pad);
  for (let i = 0; i < labels.length; i++) {
    g.fillStyle = palette[labels[i] % palette.length];
    g.fillRect(sx(xy[2 * i]) - 1.5, sy(xy[2 * i + 1]) - 1.5, 3, 3);
  }
}

function drawCurve(deltas, kStar) {
  const c = $("curve");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const pad = 30, top = Math.max(...deltas) || 1;
  const x = (k) => pad + (k - 1) / Math.max(deltas.length - 1, 1) * (c.width - 2 * pad);
  const y = (v) => c.height - pad - v / top * (c.height - 2 * pad);
  g.strokeStyle = "#333";
  g.beginPath();
  deltas.forEach((v, i) => (i ? g.lineTo(x(i + 1), y(v)) : g.moveTo(x(1), y(v))));
  g.stroke();
  deltas.forEach((v, i) => {
    g.fillStyle = i + 1 === kStar ? "#d62728" : "#333";
    g.beginPath();
    g.arc(x(i + 1), y(v), i + 1 === kStar ? 5 : 3, 0, 2 * Math.PI);
    g.fill();
    g.fillText(String(i + 1), x(i + 1) - 3, c.height - 10);
  });
}

function run(action) {
  try {
    action();
  } catch (e) {
    status(String(e.message ?? e));
  }
}

$("sample").onclick = () => run(() => {
  const s = sample_mixture(num("k"), num("sep"), num("n"), BigInt(num("seed")));
  points = s.points;
  drawPoints(points, s.labels);
  status(`sampled ${points.length / 2} points from ${num("k")} components`);
});

$("peel").onclick = () => run(() => {
  if (!points) return status("sample first");
  const t = performance.now();
  const r = identify_peel(points, num("w0"));
  drawPoints(points, r.labels);
  const unpeeled = r.labels.filter((l) => l === 0).length;
  status(`k_hat = ${r.k_hat}  w_hat = ${r.w_hat.toFixed(2)}  unpeeled = ${unpeeled}  (${(performance.now() - t).toFixed(0)} ms)`);
});

$("elbow").onclick = () => run(() => {
  if (!points) return status("sample first");
  const e = elbow_curve(points, num("kmax"), 5, BigInt(num("seed")));
  drawCurve(Array.from(e.deltas), e.k_star);
  status(`elbow k* = ${e.k_star}`);
});

await init();
$("sample").click();
