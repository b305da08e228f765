use std::io::{self, Write};

use rlmem::{CoordSpace, MemRecord, RlcCollection};

/// One side of a record in forward-read terms: read index, strand and
/// 1-based inclusive spans in compressed and expanded space.
struct Side {
    read: usize,
    strand: char,
    rle: (usize, usize),
    exp: (u64, u64),
}

fn side(rlc: &RlcCollection, id: usize, start: usize, len: usize, exp: (u64, u64)) -> Side {
    if id.is_multiple_of(2) {
        Side {
            read: id / 2,
            strand: '+',
            rle: (start + 1, start + len),
            exp: (exp.0 + 1, exp.1),
        }
    } else {
        let n = rlc.string_range(id).len();
        let x = rlc.expanded_string_len(id);
        Side {
            read: id / 2,
            strand: '-',
            rle: (n - start - len + 1, n - start),
            exp: (x - exp.1 + 1, x - exp.0),
        }
    }
}

pub fn write_tsv<W: Write>(
    w: &mut W,
    rlc: &RlcCollection,
    records: &[MemRecord],
    coords: CoordSpace,
) -> io::Result<()> {
    match coords {
        CoordSpace::Rle | CoordSpace::Expanded => writeln!(
            w,
            "read_a\tstart_a\tend_a\tread_b\tstart_b\tend_b\tlength_rlc\texcess"
        )?,
        CoordSpace::Both => writeln!(
            w,
            "read_a\tstart_a\tend_a\tread_b\tstart_b\tend_b\tlength_rlc\texcess\
             \texp_start_a\texp_end_a\texp_start_b\texp_end_b"
        )?,
    }
    for m in records {
        let a = side(rlc, m.id_a, m.start_a, m.len, m.exp_a);
        let b = side(rlc, m.id_b, m.start_b, m.len, m.exp_b);
        let (sa, sb) = match coords {
            CoordSpace::Expanded => (
                (a.exp.0 as usize, a.exp.1 as usize),
                (b.exp.0 as usize, b.exp.1 as usize),
            ),
            _ => (a.rle, b.rle),
        };
        write!(
            w,
            "{}{}\t{}\t{}\t{}{}\t{}\t{}\t{}\t{}",
            a.read, a.strand, sa.0, sa.1, b.read, b.strand, sb.0, sb.1, m.len, m.excess
        )?;
        if coords == CoordSpace::Both {
            write!(w, "\t{}\t{}\t{}\t{}", a.exp.0, a.exp.1, b.exp.0, b.exp.1)?;
        }
        writeln!(w)?;
    }
    Ok(())
}
