use std::collections::VecDeque;

use num_integer::Integer;

use crate::group::ReflectionGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Least element index in the class.
    pub representative: usize,
    pub size: usize,
    /// Element indices, increasing.
    pub elements: Vec<usize>,
}

/// Partition of a group into conjugacy classes, ordered by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }
}

/// Orbits of the conjugation action, explored through the generators.
pub fn conjugacy_classes(g: &ReflectionGroup) -> ClassData {
    let n = g.order();
    let gens: Vec<usize> = g
        .generators()
        .iter()
        .map(|s| g.index_of(s).expect("generator is an element"))
        .collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut elements = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = g.mul_index(g.mul_index(s, x), g.inverse_index(s));
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        classes.push(ConjugacyClass {
            representative: start,
            size: elements.len(),
            elements,
        });
    }
    ClassData { classes, class_of }
}

/// Order of the `i`-th element.
pub fn element_order(g: &ReflectionGroup, i: usize) -> usize {
    let mut cur = i;
    let mut k = 1;
    while cur != 0 {
        cur = g.mul_index(cur, i);
        k += 1;
    }
    k
}

/// Least common multiple of all element orders.
pub fn exponent(g: &ReflectionGroup, classes: &ClassData) -> usize {
    classes
        .classes
        .iter()
        .fold(1, |acc, c| acc.lcm(&element_order(g, c.representative)))
}
