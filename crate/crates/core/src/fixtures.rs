//! Canonical worked instances: the coin-and-urn tree whose sophisticated
//! solution is dominated, and the eight-event belief function used for the
//! conditioning checks.

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::tree::{DecisionTree, NodeSpec, Strategy};
use crate::uncertainty::{Capacity, EventSet, EventSpace, MassAssignment, ProbabilityVector};

pub fn default_epsilon() -> Rational {
    rat(1, 1000)
}

/// Coin (H/T) times Ellsberg urn (R/B/Y).
///
/// Root `0`: action `U` leads to chance node `c` revealing the coin, then
/// to decision node `1` (`d_R` or `d_B`) on heads and `2` (`d_R` or `d_Y`)
/// on tails; action `D` pays `100 + ε` on `(H∩B) ∪ (T∩Y)` and `ε`
/// elsewhere. `d_R` pays 100 on red, `d_B`/`d_Y` pay `100 + 2ε` on their
/// colour and `2ε` elsewhere. The capacity is the lower envelope of the fair
/// coin times the two extreme urn compositions `(1/3, 2/3, 0)` and
/// `(1/3, 0, 2/3)`.
#[derive(Clone, Debug)]
pub struct Example1 {
    pub epsilon: Rational,
    pub tree: DecisionTree,
    pub capacity: Capacity,
    pub extreme_products: Vec<ProbabilityVector>,
}

pub const EXAMPLE1_EVENTS: [&str; 6] = ["HR", "HB", "HY", "TR", "TB", "TY"];

impl Example1 {
    /// `epsilon` must lie in `(0, 100/6)` for the strict inequalities of the
    /// example to hold.
    pub fn new(epsilon: Rational) -> Result<Self> {
        if epsilon <= int(0) || epsilon >= rat(100, 6) {
            return Err(Error::InvalidConfig(
                "epsilon must lie strictly between 0 and 100/6".into(),
            ));
        }
        let s = EventSpace::new(EXAMPLE1_EVENTS)?;
        let set = |names: &[&str]| s.set(names).expect("fixture labels");
        let e = &epsilon;
        let two_e = e * int(2);
        let bet = |id: &str, win: &[&str], lose: &[&str], hi: Rational, lo: Rational| {
            NodeSpec::chance(
                id,
                vec![(set(win), NodeSpec::leaf(hi)), (set(lose), NodeSpec::leaf(lo))],
            )
        };
        let node1 = NodeSpec::decision(
            "1",
            vec![
                ("d_R", bet("1R", &["HR"], &["HB", "HY"], int(100), int(0))),
                ("d_B", bet("1B", &["HB"], &["HR", "HY"], int(100) + &two_e, two_e.clone())),
            ],
        );
        let node2 = NodeSpec::decision(
            "2",
            vec![
                ("d_R", bet("2R", &["TR"], &["TB", "TY"], int(100), int(0))),
                ("d_Y", bet("2Y", &["TY"], &["TR", "TB"], int(100) + &two_e, two_e.clone())),
            ],
        );
        let root = NodeSpec::decision(
            "0",
            vec![
                (
                    "U",
                    NodeSpec::chance(
                        "c",
                        vec![(set(&["HR", "HB", "HY"]), node1), (set(&["TR", "TB", "TY"]), node2)],
                    ),
                ),
                (
                    "D",
                    bet("D", &["HB", "TY"], &["HR", "HY", "TR", "TB"], int(100) + e, e.clone()),
                ),
            ],
        );
        let tree = DecisionTree::new(s.clone(), root)?;
        let sixth = rat(1, 6);
        let third = rat(1, 3);
        let zero = int(0);
        let p_black = ProbabilityVector::new(
            s.clone(),
            vec![sixth.clone(), third.clone(), zero.clone(), sixth.clone(), third.clone(), zero.clone()],
        )?;
        let p_yellow = ProbabilityVector::new(
            s.clone(),
            vec![sixth.clone(), zero.clone(), third.clone(), sixth, zero, third],
        )?;
        let extreme_products = vec![p_black, p_yellow];
        let capacity = Capacity::from_envelope(extreme_products.clone())?;
        Ok(Self {
            epsilon,
            tree,
            capacity,
            extreme_products,
        })
    }

    /// `U`, then `h` at node 1 and `t` at node 2 (0 = `d_R`).
    pub fn up(&self, h: usize, t: usize) -> Strategy {
        Strategy::new().with("0", 0).with("1", h).with("2", t)
    }

    pub fn u_r_r(&self) -> Strategy {
        self.up(0, 0)
    }

    pub fn u_b_y(&self) -> Strategy {
        self.up(1, 1)
    }

    pub fn down(&self) -> Strategy {
        Strategy::new().with("0", 1)
    }

    pub fn event(&self, names: &[&str]) -> EventSet {
        self.tree.space().set(names).expect("fixture labels")
    }
}

/// Events `e1 .. e8`.
pub fn example2_space() -> EventSpace {
    EventSpace::numbered(8).expect("eight events")
}

/// `E_k = e_{2k-1} ∪ e_{2k}` for `k` in `1..=4`.
pub fn example2_block(space: &EventSpace, k: usize) -> EventSet {
    assert!((1..=4).contains(&k));
    space.singleton(2 * k - 2) | space.singleton(2 * k - 1)
}

/// `φ(E1∪E2) = 1/4`, `φ(E3∪E4) = 3/8`, `φ(E1) = φ(E2) = 1/8`,
/// `φ(E3) = φ(E4) = 1/16`.
pub fn example2_masses() -> MassAssignment {
    let s = example2_space();
    let e = |k| example2_block(&s, k);
    MassAssignment::new(
        s.clone(),
        vec![
            (e(1) | e(2), rat(1, 4)),
            (e(3) | e(4), rat(3, 8)),
            (e(1), rat(1, 8)),
            (e(2), rat(1, 8)),
            (e(3), rat(1, 16)),
            (e(4), rat(1, 16)),
        ],
    )
    .expect("masses sum to one")
}

/// Root `r` chooses between two routes, `P` and `Q`, through the same
/// partition `{a1,a2} | {b1,b2}`; each route ends in a pair of two-way bets
/// per cell. `P` offers `x = (5,0)` / `x' = (0,5)` on the a-cell and
/// `z = (5,0)` / `z' = (0,5)` on the b-cell; `Q` offers `w1 = (6,1)` /
/// `w2 = (3,3)` and `v1 = (1,6)` / `v2 = (4,2)`. `(Q, w1, v1)` strictly
/// dominates `(P, x, z')` while `(P, x, z)` and `(P, x', z')` stay
/// undominated, so every edge of `P` is justifiable.
pub fn recombination_tree() -> DecisionTree {
    let s = EventSpace::new(["a1", "a2", "b1", "b2"]).expect("fixture labels");
    let set = |names: &[&str]| s.set(names).expect("fixture labels");
    let bet = |id: &str, cell: [&str; 2], g: [i64; 2]| {
        NodeSpec::chance(
            id,
            vec![
                (set(&[cell[0]]), NodeSpec::leaf(int(g[0]))),
                (set(&[cell[1]]), NodeSpec::leaf(int(g[1]))),
            ],
        )
    };
    let a = ["a1", "a2"];
    let b = ["b1", "b2"];
    let route = |id: &str, k: &str, m: &str, opts: [(&str, [i64; 2]); 4]| {
        NodeSpec::chance(
            id,
            vec![
                (
                    set(&a),
                    NodeSpec::decision(
                        k,
                        vec![
                            (opts[0].0, bet(&format!("{k}.{}", opts[0].0), a, opts[0].1)),
                            (opts[1].0, bet(&format!("{k}.{}", opts[1].0), a, opts[1].1)),
                        ],
                    ),
                ),
                (
                    set(&b),
                    NodeSpec::decision(
                        m,
                        vec![
                            (opts[2].0, bet(&format!("{m}.{}", opts[2].0), b, opts[2].1)),
                            (opts[3].0, bet(&format!("{m}.{}", opts[3].0), b, opts[3].1)),
                        ],
                    ),
                ),
            ],
        )
    };
    let p = route("cP", "k", "m", [("x", [5, 0]), ("x'", [0, 5]), ("z", [5, 0]), ("z'", [0, 5])]);
    let q = route("cQ", "k'", "m'", [("w1", [6, 1]), ("w2", [3, 3]), ("v1", [1, 6]), ("v2", [4, 2])]);
    DecisionTree::new(s.clone(), NodeSpec::decision("r", vec![("P", p), ("Q", q)])).expect("fixture labels")
}

/// Scans seeds in order for a random belief function under which the
/// justifiable (exact) choice in [`recombination_tree`] is dominated.
pub fn search_dominated_justifiable(seeds: std::ops::Range<u64>) -> Option<(u64, Capacity)> {
    let t = recombination_tree();
    let u = crate::criteria::Utility::identity();
    seeds.into_iter().find_map(|seed| {
        let mut rng = crate::random::rng(seed);
        let c = Capacity::from_masses(crate::random::random_masses(&mut rng, t.space()));
        let r = crate::solve::justifiable(&t, &c, &u, crate::solve::JustifiableMode::Exact, &[], 1000).ok()?;
        (r.undominated == Some(false)).then_some((seed, c))
    })
}

/// A chance root over `{e1,e2} | {e3,e4}` with a two-way bet in each cell
/// and two weighting systems that disagree with the capacity in opposite
/// cells. Limited cooperation fails for `epsilon0 < 1/5` and succeeds from
/// `1/5` on.
pub struct LimitedFailure {
    pub tree: DecisionTree,
    pub capacity: Capacity,
    pub alphas: Vec<crate::solve::AlphaSystem>,
}

pub fn limited_failure() -> LimitedFailure {
    let s = EventSpace::numbered(4).expect("four events");
    let one = |e: usize| s.singleton(e);
    let bet = |id: &str, win: usize, lose: usize| {
        NodeSpec::chance(
            id,
            vec![(one(win), NodeSpec::leaf(int(1))), (one(lose), NodeSpec::leaf(int(0)))],
        )
    };
    let root = NodeSpec::chance(
        "c",
        vec![
            (
                one(0) | one(1),
                NodeSpec::decision("k", vec![("X", bet("kX", 0, 1)), ("Y", bet("kY", 1, 0))]),
            ),
            (
                one(2) | one(3),
                NodeSpec::decision("j", vec![("Z", bet("jZ", 2, 3)), ("W", bet("jW", 3, 2))]),
            ),
        ],
    );
    let tree = DecisionTree::new(s.clone(), root).expect("fixture labels");
    let p = |w: [i64; 4]| {
        ProbabilityVector::new(s.clone(), w.iter().map(|x| rat(*x, 10)).collect()).expect("weights sum to one")
    };
    LimitedFailure {
        tree,
        capacity: Capacity::additive(p([3, 2, 3, 2])),
        alphas: vec![
            crate::solve::AlphaSystem::new(0, p([4, 1, 1, 4])),
            crate::solve::AlphaSystem::new(1, p([1, 4, 4, 1])),
        ],
    }
}
