use clap::Parser;

fn main() {
    // Die quietly on SIGPIPE like other line-oriented tools, instead of
    // panicking on EPIPE when output is piped into `head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = beauville::cli::Cli::parse();
    let mut stdout = std::io::stdout();
    std::process::exit(beauville::cli::run(&cli, &mut stdout));
}
