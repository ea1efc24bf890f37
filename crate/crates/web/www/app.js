import init, { symbol_grid, tau_table, reciprocity } from "./pkg/hecke_dedekind_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseInt($(id).value, 10);

function call(f, ...args) {
  const res = JSON.parse(f(...args));
  if (!res.ok) throw new Error(res.error);
  return res;
}

function fail(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = err.message;
  target.appendChild(p);
}

function color(x, scale) {
  if (!Number.isFinite(x) || scale === 0) return "#eee";
  const t = Math.max(-1, Math.min(1, Math.sign(x) * Math.log1p(Math.abs(x)) / scale));
  const v = Math.round(255 * (1 - Math.abs(t)));
  return t >= 0 ? `rgb(255,${v},${v})` : `rgb(${v},${v},255)`;
}

function drawGrid() {
  const out = $("g-out");
  try {
    const g = call(symbol_grid, $("g-spec").value, num("g-h"), num("g-k0"), num("g-k1"));
    $("g-meta").textContent = `${g.symbol}: weight ${g.weight}, ${g.parity}`;
    let scale = 0;
    for (const row of g.rows)
      for (const c of row.cells)
        if (Number.isFinite(c.approx)) scale = Math.max(scale, Math.log1p(Math.abs(c.approx)));
    const table = document.createElement("table");
    const head = table.insertRow();
    head.insertCell().textContent = "h \\ k";
    for (let k = g.k_min; k <= g.k_max; k++) head.insertCell().textContent = k;
    for (const row of g.rows) {
      const tr = table.insertRow();
      tr.insertCell().textContent = row.h;
      row.cells.forEach((c, i) => {
        const td = tr.insertCell();
        td.className = "cell";
        td.style.background = color(c.approx, scale);
        const k = g.k_min + i;
        td.onmouseenter = () => { $("detail").textContent = `E(${row.h}, ${k}) = ${c.exact}`; };
      });
    }
    out.innerHTML = "";
    out.appendChild(table);
  } catch (e) {
    fail(out, e);
  }
}

function drawTau() {
  const out = $("t-out");
  try {
    const t = call(tau_table, num("t-ell"), num("t-m"));
    const table = document.createElement("table");
    const head = table.insertRow();
    for (const h of ["m", "operator", "closed form", "q-expansion", ""]) head.insertCell().textContent = h;
    for (const r of t.rows) {
      const tr = table.insertRow();
      tr.insertCell().textContent = r.m;
      tr.insertCell().textContent = r.operator;
      tr.insertCell().textContent = r.closed ?? "(composite)";
      tr.insertCell().textContent = r.oracle;
      const flag = tr.insertCell();
      flag.textContent = r.agree ? "agree" : "MISMATCH";
      flag.className = r.agree ? "ok" : "bad";
    }
    out.innerHTML = `<p>weight ${t.weight}, symbol E<sub>${t.ell},${t.n0}</sub></p>`;
    out.appendChild(table);
  } catch (e) {
    fail(out, e);
  }
}

function drawReciprocity() {
  const out = $("r-out");
  try {
    const r = call(reciprocity, num("r-w"), num("r-n"));
    out.innerHTML = "";
    const poly = document.createElement("p");
    poly.innerHTML = `S<sub>${r.w},${r.n}</sub>(h, k) = <code></code>`;
    poly.querySelector("code").textContent = r.polynomial;
    out.appendChild(poly);
    const co = document.createElement("p");
    co.textContent = `cocycle g(h+k,k) + g(h,h+k) = g(h,k): ${r.cocycle_passed ? "holds" : "FAILS"}`;
    co.className = r.cocycle_passed ? "ok" : "bad";
    out.appendChild(co);
    const table = document.createElement("table");
    const head = table.insertRow();
    for (const h of ["(h, k)", "E(h,k) - E(k,-h)", "S(h,k)", ""]) head.insertCell().textContent = h;
    for (const s of r.samples) {
      const tr = table.insertRow();
      tr.insertCell().textContent = `(${s.h}, ${s.k})`;
      tr.insertCell().textContent = s.lhs;
      tr.insertCell().textContent = s.rhs;
      const flag = tr.insertCell();
      flag.textContent = s.equal ? "equal" : "DIFFER";
      flag.className = s.equal ? "ok" : "bad";
    }
    out.appendChild(table);
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("g-run").onclick = drawGrid;
$("t-run").onclick = drawTau;
$("r-run").onclick = drawReciprocity;
drawGrid();
drawTau();
drawReciprocity();
