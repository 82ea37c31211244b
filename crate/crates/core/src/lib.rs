//! Certified hamiltonian paths in cartesian powers of directed cycles.
//!
//! The `k`-th cartesian power of the directed `m`-cycle is the Cayley digraph
//! of `(Z_m)^k` with the unit vectors as generators. For `k >= 3` a
//! hamiltonian path from `u` to `v` exists exactly when
//! `d(u, v) == -1 (mod m)`; [`hamiltonian_path`] builds one explicitly and
//! returns it only after tracing it vertex by vertex.
//!
//! ```
//! use torus_ham::{hamiltonian_path, PathOutcome, TorusSpec};
//!
//! let spec = TorusSpec::power(3, 3).unwrap();
//! let to = spec.vertex(vec![2, 0, 0]).unwrap();
//! match hamiltonian_path(3, 3, &spec.zero(), &to).unwrap() {
//!     PathOutcome::Certified(cert) => assert_eq!(cert.length(), 26),
//!     PathOutcome::Refused(r) => panic!("{r}"),
//! }
//! ```
//!
//! [`oracle`] holds an independent exhaustive search for small, possibly
//! mixed-length tori.

pub mod cli;
pub mod cycles;
pub mod error;
pub mod oracle;
pub mod paths;
pub mod record;
pub mod torus;
pub mod walk;
pub mod word;

pub use error::{Error, Result};
pub use paths::{hamiltonian_path, PathOutcome, Refusal};
pub use torus::{Generator, Permutation, TorusSpec, Vertex};
pub use walk::{
    cycle_distance, verify_ham_cycle, verify_ham_path, CycleWitness, Defect, PathCertificate,
};
pub use word::{Label, Letter, Word};
