// Expects the wasm-bindgen output in ./pkg (see README for the build steps).
import init, { generate, detect, check_induced_minor } from "./pkg/imlab_web.js";

const $ = (id) => document.getElementById(id);
const show = (id, json) => { $(id).textContent = JSON.stringify(JSON.parse(json), null, 2); };

await init();

let lastGenerated = null;

$("gen-run").onclick = () => {
  const out = generate($("gen-spec").value);
  const parsed = JSON.parse(out);
  lastGenerated = parsed.graph6 ?? null;
  show("gen-out", out);
};

$("gen-use").onclick = () => {
  if (lastGenerated) $("host").value = lastGenerated;
};

$("det-run").onclick = () => show("det-out", detect($("host").value, $("det-what").value));

$("im-run").onclick = () => show("im-out", check_induced_minor($("host").value, $("im-pattern").value));
