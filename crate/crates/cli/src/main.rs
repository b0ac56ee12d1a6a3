use rsumset_cli::{run, Hooks};

fn main() {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        &Hooks::default(),
    );
    std::process::exit(code);
}
