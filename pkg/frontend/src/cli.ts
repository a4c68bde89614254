#!/usr/bin/env node
// figures render <recipe.json> [--out FILE.svg]
//
// Writes the SVG plus a `<out>.data.json` sidecar carrying the plotted
// columns and their sha256, so downstream checks can verify the figure
// plots exactly the artifact data.

import { mkdirSync, writeFileSync } from 'node:fs';
import { dirname, resolve } from 'node:path';

import { loadRecipe } from './recipe.js';
import { render } from './render.js';

function usage(): never {
  console.error('usage: figures render <recipe.json> [--out FILE.svg]');
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv.length < 2 || argv[0] !== 'render') {
    usage();
  }
  const recipePath = argv[1];
  let out: string | undefined;
  for (let i = 2; i < argv.length; i++) {
    if (argv[i] === '--out' && i + 1 < argv.length) {
      out = argv[++i];
    } else {
      usage();
    }
  }
  const recipe = loadRecipe(recipePath);
  out = out ?? recipe.out;
  if (!out) {
    console.error('no output path: pass --out or set "out" in the recipe');
    return 2;
  }
  if (!out.toLowerCase().endsWith('.svg')) {
    console.error('only SVG output is supported; pass a .svg path');
    return 2;
  }
  const result = render(recipe);
  const target = resolve(dirname(recipePath), out);
  mkdirSync(dirname(target), { recursive: true });
  writeFileSync(target, result.svg);
  writeFileSync(
    `${target}.data.json`,
    JSON.stringify({ checksum: result.checksum, columns: result.data }, null, 1) + '\n',
  );
  console.log(`${target} (data sha256 ${result.checksum.slice(0, 12)}...)`);
  return 0;
}

import { pathToFileURL } from 'node:url';

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
