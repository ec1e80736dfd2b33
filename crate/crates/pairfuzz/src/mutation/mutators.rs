//! The 32 havoc mutators.
//!
//! Each mutator documents its exact rng draw order so conformance tests can
//! force outcomes with a scripted rng. All draws go through `Rand::below`.
//!
//! Shared block rule for chunk mutators: `offset = below(len)`, then
//! `block_len = 1 + below(min(len - offset, max(1, len / 2)))`.
//!
//! Fallbacks that change the effective id: 23/24 with an empty user
//! dictionary and 25/26 with an empty auto dictionary degrade to 17
//! (random byte); 27/28 with an empty corpus view degrade to 29
//! (intra-seed clone). Internal clamps that keep the id: width-dependent
//! unit mutators (3–6, 9–16) drop to the widest variant that fits inputs
//! shorter than their word size; insertions at `max_input_size` overwrite
//! in place instead; deleting from a 1-byte input is a no-op copy.

use super::{InputBuffer, MutationContext, MutatorId};
use crate::rng::Rand;

/// Interesting 8-bit values (two's complement when written).
pub const INTERESTING_8: [i8; 9] = [-128, -1, 0, 1, 16, 32, 64, 100, 127];

/// Interesting 16-bit values.
pub const INTERESTING_16: [i16; 19] = [
    -128, -1, 0, 1, 16, 32, 64, 100, 127, -32768, -129, 128, 255, 256, 512, 1000, 1024, 4096,
    32767,
];

/// Interesting 32-bit values.
pub const INTERESTING_32: [i32; 27] = [
    -128,
    -1,
    0,
    1,
    16,
    32,
    64,
    100,
    127,
    -32768,
    -129,
    128,
    255,
    256,
    512,
    1000,
    1024,
    4096,
    32767,
    -2147483648,
    -100663046,
    -32769,
    32768,
    65535,
    65536,
    100663045,
    2147483647,
];

/// Maximum magnitude of the arithmetic mutators' delta.
pub const ARITH_MAX: u64 = 35;

/// Resolves the id that will actually be applied given the context.
///
/// Pair counts credit the effective id, so the recorded statistics always
/// describe the transformation that really happened.
pub fn effective_id(id: MutatorId, ctx: &MutationContext<'_>) -> MutatorId {
    match id.get() {
        23 | 24 if ctx.dictionary.is_empty() => MutatorId::new(17).unwrap(),
        25 | 26 if ctx.auto_dictionary.is_empty() => MutatorId::new(17).unwrap(),
        27 | 28 if ctx.corpus_view.seed_count() == 0 => MutatorId::new(29).unwrap(),
        _ => id,
    }
}

/// Applies one mutator to `input` and returns the mutated copy.
///
/// The input must be nonempty; the output length is always within
/// `[1, ctx.max_input_size]`. The original buffer is never modified.
pub fn apply_mutator(id: MutatorId, input: &InputBuffer, ctx: &mut MutationContext<'_>) -> InputBuffer {
    assert!(!input.is_empty(), "mutators require a nonempty input");
    let id = effective_id(id, ctx);
    let mut bytes = input.as_slice().to_vec();
    match id.get() {
        1 => flip_bit(&mut bytes, ctx.rng),
        2 => interesting_value(&mut bytes, 1, false, ctx.rng),
        3 => interesting_value(&mut bytes, 2, false, ctx.rng),
        4 => interesting_value(&mut bytes, 2, true, ctx.rng),
        5 => interesting_value(&mut bytes, 4, false, ctx.rng),
        6 => interesting_value(&mut bytes, 4, true, ctx.rng),
        7 => arith(&mut bytes, 1, false, false, ctx.rng),
        8 => arith(&mut bytes, 1, true, false, ctx.rng),
        9 => arith(&mut bytes, 2, false, false, ctx.rng),
        10 => arith(&mut bytes, 2, false, true, ctx.rng),
        11 => arith(&mut bytes, 2, true, false, ctx.rng),
        12 => arith(&mut bytes, 2, true, true, ctx.rng),
        13 => arith(&mut bytes, 4, false, false, ctx.rng),
        14 => arith(&mut bytes, 4, false, true, ctx.rng),
        15 => arith(&mut bytes, 4, true, false, ctx.rng),
        16 => arith(&mut bytes, 4, true, true, ctx.rng),
        17 => random_byte(&mut bytes, ctx.rng),
        18 => step_byte(&mut bytes, 1, ctx.rng),
        19 => step_byte(&mut bytes, 255, ctx.rng),
        20 => flip_byte(&mut bytes, ctx.rng),
        21 => swap_blocks(&mut bytes, ctx.rng),
        22 => delete_block(&mut bytes, ctx.rng),
        23 => overwrite_entry(&mut bytes, ctx.dictionary, ctx.rng),
        24 => insert_entry(&mut bytes, ctx.dictionary, ctx.max_input_size, ctx.rng),
        25 => overwrite_entry(&mut bytes, ctx.auto_dictionary, ctx.rng),
        26 => insert_entry(&mut bytes, ctx.auto_dictionary, ctx.max_input_size, ctx.rng),
        27 => overwrite_from_seed(&mut bytes, ctx.corpus_view, ctx.rng),
        28 => insert_from_seed(&mut bytes, ctx.corpus_view, ctx.max_input_size, ctx.rng),
        29 => clone_block(&mut bytes, ctx.max_input_size, ctx.rng),
        30 => insert_constant(&mut bytes, ctx.max_input_size, ctx.rng),
        31 => copy_block(&mut bytes, ctx.rng),
        32 => fill_block(&mut bytes, ctx.rng),
        _ => unreachable!(),
    }
    debug_assert!(!bytes.is_empty());
    debug_assert!(bytes.len() <= ctx.max_input_size);
    InputBuffer::from_bytes(bytes)
}

/// `offset = below(len)`, `block_len = 1 + below(min(len - offset, max(1, len/2)))`.
fn pick_block(len: usize, rng: &mut dyn Rand) -> (usize, usize) {
    let offset = rng.index(len);
    let cap = (len - offset).min((len / 2).max(1));
    let block = 1 + rng.index(cap);
    (offset, block)
}

fn clamp_width(len: usize, width: usize) -> usize {
    if width >= 4 && len >= 4 {
        4
    } else if width >= 2 && len >= 2 {
        2
    } else {
        1
    }
}

/// id 1 — draws: bit index in `below(8 * len)`.
fn flip_bit(bytes: &mut [u8], rng: &mut dyn Rand) {
    let bit = rng.index(bytes.len() * 8);
    bytes[bit / 8] ^= 1 << (bit % 8);
}

/// ids 2–6 — draws: offset, then table index. Width clamps to the input.
fn interesting_value(bytes: &mut [u8], width: usize, big_endian: bool, rng: &mut dyn Rand) {
    match clamp_width(bytes.len(), width) {
        4 => {
            let at = rng.index(bytes.len() - 3);
            let v = INTERESTING_32[rng.index(INTERESTING_32.len())] as u32;
            let enc = if big_endian { v.to_be_bytes() } else { v.to_le_bytes() };
            bytes[at..at + 4].copy_from_slice(&enc);
        }
        2 => {
            let at = rng.index(bytes.len() - 1);
            let v = INTERESTING_16[rng.index(INTERESTING_16.len())] as u16;
            let enc = if big_endian { v.to_be_bytes() } else { v.to_le_bytes() };
            bytes[at..at + 2].copy_from_slice(&enc);
        }
        _ => {
            let at = rng.index(bytes.len());
            bytes[at] = INTERESTING_8[rng.index(INTERESTING_8.len())] as u8;
        }
    }
}

/// ids 7–16 — draws: delta in `1 + below(35)`, then offset. Arithmetic
/// wraps modulo the word size; big-endian variants operate on the
/// byte-swapped value. Width clamps to the input.
fn arith(bytes: &mut [u8], width: usize, add: bool, big_endian: bool, rng: &mut dyn Rand) {
    let delta = 1 + rng.below(ARITH_MAX);
    match clamp_width(bytes.len(), width) {
        4 => {
            let at = rng.index(bytes.len() - 3);
            let mut chunk = [0u8; 4];
            chunk.copy_from_slice(&bytes[at..at + 4]);
            let v = if big_endian { u32::from_be_bytes(chunk) } else { u32::from_le_bytes(chunk) };
            let v = if add { v.wrapping_add(delta as u32) } else { v.wrapping_sub(delta as u32) };
            let enc = if big_endian { v.to_be_bytes() } else { v.to_le_bytes() };
            bytes[at..at + 4].copy_from_slice(&enc);
        }
        2 => {
            let at = rng.index(bytes.len() - 1);
            let mut chunk = [0u8; 2];
            chunk.copy_from_slice(&bytes[at..at + 2]);
            let v = if big_endian { u16::from_be_bytes(chunk) } else { u16::from_le_bytes(chunk) };
            let v = if add { v.wrapping_add(delta as u16) } else { v.wrapping_sub(delta as u16) };
            let enc = if big_endian { v.to_be_bytes() } else { v.to_le_bytes() };
            bytes[at..at + 2].copy_from_slice(&enc);
        }
        _ => {
            let at = rng.index(bytes.len());
            bytes[at] = if add {
                bytes[at].wrapping_add(delta as u8)
            } else {
                bytes[at].wrapping_sub(delta as u8)
            };
        }
    }
}

/// id 17 — draws: offset, then value in `below(256)`.
fn random_byte(bytes: &mut [u8], rng: &mut dyn Rand) {
    let at = rng.index(bytes.len());
    bytes[at] = rng.below(256) as u8;
}

/// ids 18/19 — draws: offset. Wrapping add of `step` (255 ≡ −1).
fn step_byte(bytes: &mut [u8], step: u8, rng: &mut dyn Rand) {
    let at = rng.index(bytes.len());
    bytes[at] = bytes[at].wrapping_add(step);
}

/// id 20 — draws: offset. Flips all bits of the byte (xor 0xFF).
fn flip_byte(bytes: &mut [u8], rng: &mut dyn Rand) {
    let at = rng.index(bytes.len());
    bytes[at] ^= 0xFF;
}

/// id 21 — draws: block offset, block len, second offset. Swaps the two
/// (possibly overlapping) equal-length blocks element by element.
fn swap_blocks(bytes: &mut [u8], rng: &mut dyn Rand) {
    let (a, block) = pick_block(bytes.len(), rng);
    let b = rng.index(bytes.len() - block + 1);
    for k in 0..block {
        bytes.swap(a + k, b + k);
    }
}

/// id 22 — draws: offset, block len. Splices the block out, keeping at
/// least one byte; a 1-byte input is returned unchanged.
fn delete_block(bytes: &mut Vec<u8>, rng: &mut dyn Rand) {
    if bytes.len() == 1 {
        return;
    }
    let offset = rng.index(bytes.len());
    let cap = (bytes.len() - offset)
        .min((bytes.len() / 2).max(1))
        .min(bytes.len() - 1);
    let block = 1 + rng.index(cap);
    bytes.drain(offset..offset + block);
}

/// ids 23/25 — draws: entry index, offset. Overwrites with as much of the
/// entry as fits past the offset.
fn overwrite_entry(bytes: &mut [u8], entries: &[Vec<u8>], rng: &mut dyn Rand) {
    let entry = &entries[rng.index(entries.len())];
    let at = rng.index(bytes.len());
    let n = entry.len().min(bytes.len() - at);
    bytes[at..at + n].copy_from_slice(&entry[..n]);
}

/// ids 24/26 — draws: entry index, insert position. Insertion is clamped
/// to `max`; with no room it overwrites at the (clamped) position instead.
fn insert_entry(bytes: &mut Vec<u8>, entries: &[Vec<u8>], max: usize, rng: &mut dyn Rand) {
    let entry = entries[rng.index(entries.len())].clone();
    let pos = rng.index(bytes.len() + 1);
    insert_or_overwrite(bytes, pos, &entry, max);
}

/// id 27 — draws: seed index, source offset, source block len, destination
/// offset. Overwrites with a block from another corpus seed.
fn overwrite_from_seed(bytes: &mut [u8], corpus: &dyn super::CorpusView, rng: &mut dyn Rand) {
    let other = corpus.seed_bytes(rng.index(corpus.seed_count()));
    if other.is_empty() {
        return;
    }
    let (src, block) = pick_block(other.len(), rng);
    let at = rng.index(bytes.len());
    let n = block.min(bytes.len() - at);
    bytes[at..at + n].copy_from_slice(&other[src..src + n]);
}

/// id 28 — draws: seed index, source offset, source block len, insert
/// position. Inserts a block from another corpus seed (clamped like 24).
fn insert_from_seed(bytes: &mut Vec<u8>, corpus: &dyn super::CorpusView, max: usize, rng: &mut dyn Rand) {
    let other = corpus.seed_bytes(rng.index(corpus.seed_count()));
    if other.is_empty() {
        return;
    }
    let (src, block) = pick_block(other.len(), rng);
    let piece = other[src..src + block].to_vec();
    let pos = rng.index(bytes.len() + 1);
    insert_or_overwrite(bytes, pos, &piece, max);
}

/// id 29 — draws: source offset, block len, insert position. Inserts a
/// copy of one of the input's own blocks at a second position.
fn clone_block(bytes: &mut Vec<u8>, max: usize, rng: &mut dyn Rand) {
    let (src, block) = pick_block(bytes.len(), rng);
    let piece = bytes[src..src + block].to_vec();
    let pos = rng.index(bytes.len() + 1);
    insert_or_overwrite(bytes, pos, &piece, max);
}

/// id 30 — draws: block len in `1 + below(max(1, len/2))`, source coin,
/// value (`below(256)`) or source byte offset, insert position. Inserts a
/// constant run; the constant is either random or taken from the input.
fn insert_constant(bytes: &mut Vec<u8>, max: usize, rng: &mut dyn Rand) {
    let block = 1 + rng.index((bytes.len() / 2).max(1));
    let value = if rng.below(2) == 0 {
        rng.below(256) as u8
    } else {
        bytes[rng.index(bytes.len())]
    };
    let pos = rng.index(bytes.len() + 1);
    let piece = vec![value; block];
    insert_or_overwrite(bytes, pos, &piece, max);
}

/// id 31 — draws: source offset, block len, destination offset. Copies a
/// block over another block of the same input (memmove semantics).
fn copy_block(bytes: &mut [u8], rng: &mut dyn Rand) {
    let (src, block) = pick_block(bytes.len(), rng);
    let dst = rng.index(bytes.len() - block + 1);
    bytes.copy_within(src..src + block, dst);
}

/// id 32 — draws: offset, block len, source coin, value or source byte
/// offset. Overwrites the block with a constant byte.
fn fill_block(bytes: &mut [u8], rng: &mut dyn Rand) {
    let (at, block) = pick_block(bytes.len(), rng);
    let value = if rng.below(2) == 0 {
        rng.below(256) as u8
    } else {
        bytes[rng.index(bytes.len())]
    };
    bytes[at..at + block].fill(value);
}

fn insert_or_overwrite(bytes: &mut Vec<u8>, pos: usize, piece: &[u8], max: usize) {
    let room = max.saturating_sub(bytes.len());
    let n = piece.len().min(room);
    if n > 0 {
        bytes.splice(pos..pos, piece[..n].iter().copied());
    } else {
        let at = pos.min(bytes.len() - 1);
        let n = piece.len().min(bytes.len() - at);
        bytes[at..at + n].copy_from_slice(&piece[..n]);
    }
}
