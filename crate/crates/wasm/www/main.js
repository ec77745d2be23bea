import init, { expand_table, sierpinski_matrix, verify_identity } from "./pkg/digisheff_wasm.js";

const $ = (id) => document.getElementById(id);

function escape(s) {
  return String(s).replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);
}

function call(f, ...args) {
  try {
    return { ok: JSON.parse(f(...args)) };
  } catch (e) {
    return { err: String(e) };
  }
}

function runExpand() {
  const r = call(expand_table, $("exp-family").value, Number($("exp-degree").value));
  if (r.err) {
    $("exp-out").innerHTML = `<p class="error">${escape(r.err)}</p>`;
    return;
  }
  const rows = r.ok.s
    .map((s, n) => `<tr><td>${n}</td><td>${escape(s)}</td><td>${escape(r.ok.p[n])}</td></tr>`)
    .join("");
  $("exp-out").innerHTML = `<table><tr><th>n</th><th>s<sub>n</sub>(x)</th><th>p<sub>n</sub>(x)</th></tr>${rows}</table>`;
}

let drawn = null;

// Symbolic cells are drawn black; evaluated cells are shaded by sign and
// log magnitude, zeros left white.
function color(cell, maxLog) {
  if (cell.approx === undefined) return "#222";
  const v = cell.approx;
  if (v === 0) return "#fff";
  const t = maxLog > 0 ? Math.log1p(Math.abs(v)) / maxLog : 1;
  const shade = Math.round(230 - 200 * t);
  return v > 0 ? `rgb(${shade},${shade},255)` : `rgb(255,${shade},${shade})`;
}

function runMatrix() {
  const point = $("mat-point").value.trim();
  const r = call(
    sierpinski_matrix,
    $("mat-kind").value,
    $("mat-family").value,
    Number($("mat-base").value),
    Number($("mat-levels").value),
    point === "" ? undefined : point,
  );
  const canvas = $("mat-canvas");
  const ctx = canvas.getContext("2d");
  ctx.fillStyle = "#fff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  if (r.err) {
    $("mat-err").textContent = r.err;
    drawn = null;
    return;
  }
  $("mat-err").textContent = "";
  const m = r.ok;
  const px = Math.max(1, Math.floor(canvas.width / m.dim));
  const maxLog = Math.max(0, ...m.cells.map((c) => (c.approx === undefined ? 0 : Math.log1p(Math.abs(c.approx)))));
  for (const c of m.cells) {
    ctx.fillStyle = color(c, maxLog);
    ctx.fillRect(c.col * px, c.row * px, px, px);
  }
  drawn = { px, dim: m.dim, cells: new Map(m.cells.map((c) => [`${c.row},${c.col}`, c])) };
}

function hover(ev) {
  if (!drawn) return;
  const rect = ev.target.getBoundingClientRect();
  const col = Math.floor((ev.clientX - rect.left) / drawn.px);
  const row = Math.floor((ev.clientY - rect.top) / drawn.px);
  if (row >= drawn.dim || col >= drawn.dim) return;
  const c = drawn.cells.get(`${row},${col}`);
  $("cell").textContent = c
    ? `(${row}, ${col}): ${c.text}${c.value !== undefined ? ` = ${c.value}` : ""}`
    : `(${row}, ${col}): 0 (column not digitally dominated by row)`;
}

function runVerify() {
  const r = call(
    verify_identity,
    $("ver-id").value,
    $("ver-family").value,
    Number($("ver-base").value),
    Number($("ver-n").value),
    $("ver-binomial").checked,
    $("ver-tamper").checked,
  );
  if (r.err) {
    $("ver-out").innerHTML = `<p class="error">${escape(r.err)}</p>`;
    return;
  }
  const v = r.ok;
  const witness = v.witness ? `<p>first differing monomial: <code>${escape(JSON.stringify(v.witness))}</code></p>` : "";
  const forms = (v.forms || [])
    .map((f) => `<li>${escape(f.identity)}: <span class="${f.pass ? "pass" : "fail"}">${f.pass ? "pass" : "fail"}</span>${f.params.informational ? " (informational)" : ""}</li>`)
    .join("");
  $("ver-out").innerHTML = `
    <p>${escape(v.identity)}: <span class="${v.pass ? "pass" : "fail"}">${v.pass ? "PASS" : "FAIL"}</span></p>
    ${witness}
    <p>left side</p><pre>${escape(v.lhs_text)}</pre>
    <p>right side</p><pre>${escape(v.rhs_text)}</pre>
    ${forms ? `<ul>${forms}</ul>` : ""}`;
}

await init();
$("exp-run").addEventListener("click", runExpand);
$("mat-run").addEventListener("click", runMatrix);
$("mat-canvas").addEventListener("mousemove", hover);
$("ver-run").addEventListener("click", runVerify);
runExpand();
runMatrix();
runVerify();
