use clap::Parser;
use singlink::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
        }
        Err(err) => {
            let payload = serde_json::json!({
                "error": format!("{err}"),
            });
            eprintln!("{payload}");
            std::process::exit(1);
        }
    }
}
