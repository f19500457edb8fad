use std::io::{self, Write};

/// Stdout that ends the process quietly once the reader goes away
/// (`lambflux sweep | head`).
struct Stdout<W>(W);

impl<W: Write> Stdout<W> {
    fn check<T>(r: io::Result<T>) -> io::Result<T> {
        match r {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
            r => r,
        }
    }
}

impl<W: Write> Write for Stdout<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        Self::check(self.0.write(buf))
    }

    fn flush(&mut self) -> io::Result<()> {
        Self::check(self.0.flush())
    }
}

fn main() {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = lambflux::cli::run(std::env::args_os(), &mut Stdout(stdout.lock()), &mut stderr.lock());
    std::process::exit(code);
}
