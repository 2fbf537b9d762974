//! Observer naming. The first four observers are A, B, C and E (the fourth
//! letter skips D, which is reserved for distances in the geometry), then
//! F and G for the 5- and 6-qubit envelope.

pub const OBSERVER_NAMES: [char; 6] = ['A', 'B', 'C', 'E', 'F', 'G'];

pub fn observer_name(index: usize) -> char {
    OBSERVER_NAMES[index]
}

pub fn subset_name(vars: &[usize]) -> String {
    vars.iter().map(|&v| observer_name(v)).collect()
}
