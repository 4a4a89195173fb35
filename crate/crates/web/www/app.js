import init, { analyze, reach, extend } from "./pkg/lincut_web.js";

const $ = (id) => document.getElementById(id);
const out = $("out");

function show(run) {
  out.classList.remove("error");
  try {
    out.textContent = run();
  } catch (e) {
    out.classList.add("error");
    out.textContent = String(e);
  }
}

function pretty(json) {
  return JSON.stringify(JSON.parse(json), null, 2);
}

function describe(json) {
  const r = JSON.parse(json);
  const lines = r.reachable ? [r.path.join(" -> ")] : ["unreachable"];
  return lines.concat(r.warnings).join("\n");
}

await init();

$("analyze").onclick = () => show(() => pretty(analyze($("rules").value)));
$("reach").onclick = () =>
  show(() => describe(reach($("rules").value, $("from").value, $("to").value, $("sem").value)));
$("extend").onclick = () => show(() => extend($("rules").value, $("mode").value));
