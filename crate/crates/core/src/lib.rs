pub mod counting;
pub mod error;
pub mod frobenius;
pub mod ideal;
pub mod job;
pub mod lattice;
pub mod module;
pub mod neighbourhood;
pub mod poset;

pub use error::{Error, Result};
pub use lattice::{kernel_basis, LatticeBasis, LatticePoint, QuotientClass, WeightVector};

/// Sizes the worker pool used for candidate enumeration. Output does not
/// depend on the thread count. Has no effect without the `parallel` feature.
pub fn configure_threads(threads: usize) -> Result<()> {
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}
