import init, { describe, minimal_path, render_svg } from "./pkg/thompson_web.js";

const $ = (id) => document.getElementById(id);

function show(id, f, word, asHtml) {
  const el = $(id);
  el.className = "";
  try {
    const out = f(word);
    if (asHtml) el.innerHTML = out; else el.textContent = out;
  } catch (e) {
    el.className = "error";
    el.textContent = e.message ?? String(e);
  }
}

function update() {
  const word = $("word").value;
  show("describe", describe, word, false);
  show("path", minimal_path, word, false);
  show("svg", render_svg, word, true);
}

await init();
$("form").addEventListener("submit", (e) => {
  e.preventDefault();
  update();
});
update();
