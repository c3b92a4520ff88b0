//! Writes a seeded synthetic evaluation corpus to disk so the CLI can
//! be exercised without external content.
//!
//! Usage: `cargo run --release --example gen_corpus -- <dir> [count] [WxH]`

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use cfl_core::synth;
use cfl_core::y4m::{write_y4m, Y4mFrame, Y4mHeader};

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| {
        eprintln!("usage: gen_corpus <dir> [count] [WxH]");
        std::process::exit(2);
    }));
    let count: usize = args
        .next()
        .map(|s| s.parse().expect("count"))
        .unwrap_or(8);
    let (width, height) = args
        .next()
        .map(|s| {
            let (w, h) = s.split_once('x').expect("WxH");
            (w.parse().expect("width"), h.parse().expect("height"))
        })
        .unwrap_or((384, 256));

    std::fs::create_dir_all(&dir).expect("create output dir");
    for i in 0..count {
        let frame = synth::kodak_like(0xC0DEC + i as u64, width, height);
        let header = Y4mHeader::new(width, height, 25, 1, frame.format, frame.depth);
        let path = dir.join(format!("still{i:02}.y4m"));
        let mut out = BufWriter::new(File::create(&path).expect("create file"));
        write_y4m(
            &mut out,
            &header,
            &[Y4mFrame {
                frame,
                frame_params: String::new(),
            }],
        )
        .expect("write y4m");
        println!("{}", path.display());
    }
}
