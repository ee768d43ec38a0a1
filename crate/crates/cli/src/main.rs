use clap::Parser;

use qteleport_lab::config::Cli;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { qteleport_lab::EXIT_USAGE } else { qteleport_lab::EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(qteleport_lab::run(&cli));
}
