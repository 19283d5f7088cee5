import * as fs from "node:fs";

export function readJsonl<T>(path: string): T[] {
  const text = fs.readFileSync(path, "utf8");
  const rows: T[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (!line) continue;
    try {
      rows.push(JSON.parse(line) as T);
    } catch (err) {
      throw new Error(`${path}:${i + 1}: invalid JSON line (${(err as Error).message})`);
    }
  }
  return rows;
}

export function writeJsonl(path: string, rows: unknown[]): void {
  const text = rows.map((r) => JSON.stringify(r)).join("\n");
  fs.writeFileSync(path, text.length ? text + "\n" : "");
}

/** Parse `--flag value` style arguments; returns positionals separately. */
export function parseArgs(argv: string[], spec: Record<string, { flag?: boolean }>):
    { options: Record<string, string | boolean>; positionals: string[] } {
  const options: Record<string, string | boolean> = {};
  const positionals: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg.startsWith("--")) {
      const name = arg.slice(2);
      if (!(name in spec)) throw new Error(`unknown option --${name}`);
      if (spec[name].flag) {
        options[name] = true;
      } else {
        const value = argv[++i];
        if (value === undefined) throw new Error(`option --${name} requires a value`);
        options[name] = value;
      }
    } else {
      positionals.push(arg);
    }
  }
  return { options, positionals };
}
