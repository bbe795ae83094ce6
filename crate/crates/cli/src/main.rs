use clap::Parser;
use ratdyn_cli::{exit_code, expand_file_args, render_error, run, Cli, Format, EXIT_INPUT};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let args = match expand_file_args(&argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("cannot read --file: {}", e);
            std::process::exit(EXIT_INPUT);
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.render(cli.format));
            std::process::exit(out.code);
        }
        Err(e) => {
            let msg = render_error(&e, cli.format, &argv);
            match cli.format {
                Format::Text => eprintln!("{}", msg),
                Format::Structured => println!("{}", msg),
            }
            std::process::exit(exit_code(&e));
        }
    }
}
