// plot --kind threshold|entropy|counts --in <file> --out <fig.svg> [--normalize]

import { readFileSync, writeFileSync } from "fs";
import { PlotKind, PlotSpec, render } from "./render.js";
import { SchemaError } from "./schema.js";

function usage(): never {
  console.error(
    "usage: plot --kind {threshold|entropy|counts} --in <file> " +
      "--out <fig.svg> [--normalize]",
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  let kind: string | undefined;
  let input: string | undefined;
  let output: string | undefined;
  let normalize = false;
  for (let i = 0; i < argv.length; i++) {
    switch (argv[i]) {
      case "--kind":
        kind = argv[++i];
        break;
      case "--in":
        input = argv[++i];
        break;
      case "--out":
        output = argv[++i];
        break;
      case "--normalize":
        normalize = true;
        break;
      default:
        usage();
    }
  }
  if (!kind || !input || !output) usage();
  if (!["threshold", "entropy", "counts"].includes(kind)) usage();

  let text: string;
  try {
    text = readFileSync(input, "utf-8");
  } catch (e) {
    console.error(`cannot read ${input}: ${(e as Error).message}`);
    return 1;
  }
  const spec: PlotSpec = { kind: kind as PlotKind, inputText: text, normalize };
  let out: string;
  try {
    out = render(spec);
  } catch (e) {
    if (e instanceof SchemaError) {
      console.error(`schema error in ${input}: ${e.message}`);
      return 1;
    }
    throw e;
  }
  writeFileSync(output, out);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.ts") ||
    process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
