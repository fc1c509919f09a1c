import init, { evaluate, ladder, sample } from "./pkg/pmr_wasm.js";

const $ = (id) => document.getElementById(id);

const EXAMPLE = `edge t1 a1 a3 Transfer
edge t2 a3 a2 Transfer
edge t3 a2 a4 Transfer
edge t4 a4 a6 Transfer
edge t5 a6 a3 Transfer
edge t6 a6 a5 Transfer
edge t7 a3 a5 Transfer
edge t8 a5 a1 Transfer
`;

function show(target, fn) {
  const el = $(target);
  try {
    el.textContent = fn();
    el.classList.remove("error");
  } catch (e) {
    el.textContent = e.message ?? String(e);
    el.classList.add("error");
  }
}

function rows(list) {
  return list.map((r) => `${r.src}\t${r.tgt}\t${r.path}`).join("\n");
}

function runQuery() {
  show("result", () => {
    const v = JSON.parse(evaluate($("graph").value, $("query").value, Number($("limit").value)));
    const head = `${v.count} paths, PMR with ${v.rep_nodes} nodes and ${v.rep_edges} edges`;
    const more = v.truncated ? "\n…" : "";
    return `${head}\n\n${rows(v.rows)}${more}\n\nprojection edges: ${v.projection.join(" ")}`;
  });
}

function runSample() {
  show("samples", () => {
    const len = $("length").value === "" ? -1 : Number($("length").value);
    const v = JSON.parse(
      sample($("graph").value, $("query").value, BigInt($("seed").value), Number($("draws").value), len),
    );
    return v.length ? rows(v) : "no paths";
  });
}

function runLadder() {
  const n = Number($("rungs").value);
  $("rungs-value").textContent = n;
  show("ladder", () => {
    const v = JSON.parse(ladder(n));
    return `graph: ${v.graph_nodes} nodes, ${v.graph_edges} edges\n` +
      `answer: ${v.rep_nodes} nodes, ${v.rep_edges} edges\n` +
      `paths x→y: ${v.count}`;
  });
}

await init();
$("graph").value = EXAMPLE;
$("run").addEventListener("click", runQuery);
$("draw").addEventListener("click", runSample);
$("rungs").addEventListener("input", runLadder);
runQuery();
runLadder();
