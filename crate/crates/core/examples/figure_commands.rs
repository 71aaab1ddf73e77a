// Library form of the figure commands: writes two figure CSVs into a scratch directory.

use twomode::experiments::{cmd_figure, FigureId, RunConfig, Sweep};

pub fn run_example() -> twomode::Result<()> {
    let dir = std::env::temp_dir().join(format!("twomode-figures-{}", std::process::id()));
    let mut cfg = RunConfig::new(&dir);
    cfg.sweep = Some(Sweep::new(0.0, 4.0, 5));
    for id in [FigureId::Var, FigureId::OutfigC] {
        for path in cmd_figure(id, &cfg)? {
            let text = std::fs::read_to_string(&path)?;
            println!("{} ({} lines)", path.display(), text.lines().count());
            for line in text.lines().take(4) {
                println!("  {line}");
            }
        }
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> twomode::Result<()> {
    run_example()
}
