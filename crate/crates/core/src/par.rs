//! Order-preserving task mapping over a rayon pool, or a plain loop when the
//! `parallel` feature is off or one thread is requested.

/// How many workers a computation may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    /// `0` lets rayon pick the thread count.
    Threads(usize),
    #[default]
    Auto,
}

impl Parallelism {
    pub fn from_threads(threads: usize) -> Self {
        match threads {
            1 => Parallelism::Sequential,
            0 => Parallelism::Auto,
            t => Parallelism::Threads(t),
        }
    }

    fn threads(self) -> Option<usize> {
        match self {
            Parallelism::Sequential => None,
            Parallelism::Threads(1) => None,
            Parallelism::Threads(t) => Some(t),
            Parallelism::Auto => Some(0),
        }
    }

    /// Maps `f` over `tasks`, returning results in task order.
    pub fn map<T, R, F>(self, tasks: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self.threads() {
            #[cfg(feature = "parallel")]
            Some(threads) if tasks.len() > 1 => {
                use rayon::prelude::*;
                let run = || tasks.into_par_iter().map(&f).collect();
                if threads == 0 {
                    run()
                } else {
                    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                        Ok(pool) => pool.install(run),
                        Err(_) => run(),
                    }
                }
            }
            _ => tasks.into_iter().map(f).collect(),
        }
    }
}
