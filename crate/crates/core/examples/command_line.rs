//! Drive the command-line interface in-process.

fn main() {
    for args in [
        vec!["verlinde", "rank", "A1", "1", "--genus", "1"],
        vec!["verlinde", "fuse", "A2", "1", "--labels", "1,0;1,0"],
        vec!["verlinde", "subbundles", "A1", "4", "--labels", "2;2;2;2", "--format", "pretty"],
    ] {
        let out = verlinde::cli::dispatch(&args);
        print!("$ {}\n{}{}", args.join(" "), out.stdout, out.stderr);
    }
}
