import init, { describeBraid, kappaJson, skhJson, reducedJson } from "./pkg/kappa_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function inputs() {
  return [Number($("strands").value) || 0, $("word").value];
}

function el(name, attrs) {
  const e = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  return e;
}

// Strands run left to right; crossing j swaps positions |g| and |g|+1.
function drawBraid(info) {
  const svg = $("diagram");
  svg.replaceChildren();
  if (info.error) return;
  const n = info.n, letters = info.letters;
  const dx = 40, dy = 28, x0 = 20, y0 = 20;
  const width = x0 * 2 + dx * (letters.length + 1);
  svg.setAttribute("viewBox", `0 0 ${width} ${y0 * 2 + dy * (n - 1)}`);
  svg.setAttribute("height", y0 * 2 + dy * (n - 1));
  const y = (i) => y0 + dy * (i - 1);
  const line = (xa, ya, xb, yb, gap) =>
    el("line", { x1: xa, y1: ya, x2: xb, y2: yb, stroke: gap ? "white" : "#333", "stroke-width": gap ? 8 : 2 });
  letters.forEach((g, j) => {
    const xa = x0 + dx * j + dx / 2, xb = xa + dx;
    const i = Math.abs(g);
    for (let s = 1; s <= n; s++) {
      if (s !== i && s !== i + 1) svg.append(line(xa, y(s), xb, y(s)));
    }
    // the under strand first, then a white gap and the over strand
    const [under, over] = g > 0 ? [[y(i + 1), y(i)], [y(i), y(i + 1)]] : [[y(i), y(i + 1)], [y(i + 1), y(i)]];
    svg.append(line(xa, under[0], xb, under[1]));
    svg.append(line(xa + 6, over[0] + (over[1] - over[0]) * 6 / dx, xb - 6, over[1] - (over[1] - over[0]) * 6 / dx, true));
    svg.append(line(xa, over[0], xb, over[1]));
  });
  for (let s = 1; s <= n; s++) {
    svg.append(line(x0, y(s), x0 + dx / 2, y(s)));
    svg.append(line(x0 + dx * letters.length + dx / 2, y(s), width - x0, y(s)));
  }
}

function table(headers, rows) {
  const t = document.createElement("table");
  const tr = t.insertRow();
  headers.forEach((h) => { const th = document.createElement("th"); th.textContent = h; tr.append(th); });
  rows.forEach((r) => { const row = t.insertRow(); r.forEach((c) => (row.insertCell().textContent = c)); });
  return t;
}

function show(nodes) {
  $("result").replaceChildren(...nodes);
}

function showError(msg) {
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = msg;
  show([p]);
}

function para(text, cls) {
  const p = document.createElement("p");
  if (cls) p.className = cls;
  p.textContent = text;
  return p;
}

function run(fn, render) {
  const [n, w] = inputs();
  const info = JSON.parse(describeBraid(n, w));
  drawBraid(info);
  if (info.error) return showError(info.error);
  show([para("computing…")]);
  setTimeout(() => {
    const out = JSON.parse(fn(n, w));
    out.error ? showError(out.error) : render(out, info);
  }, 0);
}

$("run-kappa").onclick = () => run(kappaJson, (r, info) => {
  const nodes = [
    para(`κ = ${r.value}`, "value"),
    para(`${r.n} strands, self-linking ${info.sl}; ψ sits at (h, q, k) = (${r.psi.h}, ${r.psi.q}, ${r.psi.k})`),
  ];
  if (r.witness) {
    nodes.push(para(`ψ = d(y) with y at filtration level ${r.witness_k}, ${r.witness.length} generators:`));
    nodes.push(table(["resolution", "labels (v+ bits)"],
      r.witness.map((g) => [g.res.toString(2).padStart(info.letters.length, "0"), g.labels.toString(2)])));
  } else {
    nodes.push(para("ψ never bounds."));
  }
  show(nodes);
});

$("run-skh").onclick = () => run(skhJson, (r) => {
  const total = r.rows.reduce((s, x) => s + x.dim, 0);
  show([para(`total dimension ${total}`), table(["h", "q", "k", "dim"], r.rows.map((x) => [x.h, x.q, x.k, x.dim]))]);
});

$("run-reduced").onclick = () => run(reducedJson, (r) => {
  show([
    para(`κ = ${r.kappa}`, "value"),
    table(["position", "gap", "κ̃ (sub)", "κ̲ (quot)"], r.rows.map((x) => [x.position, x.gap, x.sub, x.quot])),
  ]);
});

await init();
$("word").oninput = $("strands").oninput = () => drawBraid(JSON.parse(describeBraid(...inputs())));
drawBraid(JSON.parse(describeBraid(...inputs())));
