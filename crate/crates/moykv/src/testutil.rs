//! Diagram builders shared by the unit tests.

use crate::diagram::{parse_diagram, SliceDiagram};

pub fn moy(body: &str) -> SliceDiagram {
    parse_diagram(&format!("diagram t {{ kind: moy\n slices: {body} }}")).unwrap()
}

pub fn link(body: &str) -> SliceDiagram {
    parse_diagram(&format!("diagram t {{ kind: link\n slices: {body} }}")).unwrap()
}

pub fn un(body: &str) -> SliceDiagram {
    parse_diagram(&format!("diagram t {{ kind: unoriented\n slices: {body} }}")).unwrap()
}

fn rung(words: &mut Vec<String>, l: &mut u32, r: &mut u32, rightward: bool, amt: u32) {
    if rightward {
        words.push(format!("spl 0 color={},{amt}", *l - amt));
        words.push("mrg 1".into());
        *l -= amt;
        *r += amt;
    } else {
        words.push(format!("spl 1 color={amt},{}", *r - amt));
        words.push("mrg 0".into());
        *r -= amt;
        *l += amt;
    }
}

/// A closed ladder: two upward strands colored 3 and 2 exchanging color
/// through rungs, restored to 3 and 2 at the top and closed by nested caps.
pub fn random_ladder(seed: &[(bool, u8)]) -> SliceDiagram {
    let mut words = vec!["cup 0 color=3 orient=lu".to_string(), "cup 1 color=2 orient=lu".into()];
    let (mut l, mut r) = (3u32, 2u32);
    for &(rightward, amt) in seed {
        let from = if rightward { l } else { r };
        if from > 1 {
            rung(&mut words, &mut l, &mut r, rightward, 1 + amt as u32 % (from - 1));
        }
    }
    if l > 3 {
        let a = l - 3;
        rung(&mut words, &mut l, &mut r, true, a);
    } else if l < 3 {
        let a = 3 - l;
        rung(&mut words, &mut l, &mut r, false, a);
    }
    words.push("cap 1".into());
    words.push("cap 0".into());
    moy(&words.join(" / "))
}
