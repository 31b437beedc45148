//! Embedded reference datasets, stored in listing order and pinned by the
//! SHA-256 of their canonical text form.

use extropy_core::{Result, Sample};

use crate::input::{digest, emit_values};

#[derive(Debug)]
pub struct Dataset {
    pub id: &'static str,
    pub values: &'static [f64],
    /// Window size used for this dataset in the reference analysis.
    pub reference_m: usize,
    pub description: &'static str,
    /// SHA-256 of [`emit_values`] applied to `values`.
    pub sha256: &'static str,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn sample(&self) -> Result<Sample> {
        Sample::from_slice(self.values)
    }

    pub fn digest(&self) -> String {
        digest(&emit_values(self.values))
    }
}

const DATASET_1: [f64; 20] = [
    15.5, 23.75, 8.0, 17.0, 5.5, 19.0, 24.0, 2.5, 7.5, 11.0,
    13.0, 3.75, 25.0, 9.75, 22.0, 18.0, 6.0, 12.5, 2.0, 21.5,
];

const DATASET_2: [f64; 45] = [
    0.2, 0.3, 0.5, 0.5, 0.5, 0.5, 0.6, 0.6, 0.7, 0.7,
    0.7, 0.8, 0.8, 1.0, 1.0, 1.0, 1.0, 1.1, 1.3, 1.5,
    1.5, 1.5, 1.5, 2.0, 2.0, 2.2, 2.5, 3.0, 3.0, 3.3,
    3.3, 4.0, 4.0, 4.5, 4.7, 5.0, 5.4, 5.4, 7.0, 7.5,
    8.8, 9.0, 10.3, 22.0, 24.5,
];

const DATASET_3: [f64; 43] = [
    1.42, 0.84, 2.32, 1.84, 2.4, 0.9, 1.49, 0.87, 1.36, 1.25,
    1.25, 1.8, 0.86, 0.04, 0.49, 2.08, 0.58, 0.22, 0.06, 1.7,
    2.67, 2.39, 2.32, 2.98, 3.21, 1.99, 1.3, 1.25, 1.76, 1.67,
    1.36, 1.57, 1.21, 1.24, 1.62, 0.93, 1.32, 0.86, 1.48, 0.85,
    1.23, 1.23, 2.14,
];

const DATASET_4: [f64; 51] = [
    99.0, 61.0, 86.0, 113.0, 96.0, 99.0, 83.0, 57.0, 80.0, 79.0,
    75.0, 70.0, 15.0, 62.0, 87.0, 95.0, 81.0, 71.0, 44.0, 13.0,
    52.0, 97.0, 146.0, 52.0, 52.0, 29.0, 108.0, 135.0, 102.0, 48.0,
    66.0, 90.0, 22.0, 72.0, 176.0, 107.0, 84.0, 83.0, 37.0, 67.0,
    83.0, 36.0, 49.0, 39.0, 102.0, 66.0, 154.0, 72.0, 63.0, 83.0,
    77.0,
];

const DATASET_5: [f64; 34] = [
    0.0518, 0.0518, 0.1009, 0.1009, 0.1917, 0.1917, 0.1917, 0.2336, 0.2336, 0.2336,
    0.2733, 0.2733, 0.3467, 0.3805, 0.3805, 0.4126, 0.4431, 0.4719, 0.4719, 0.4993,
    0.6162, 0.6550, 0.6550, 0.7059, 0.7211, 0.7356, 0.7623, 0.7863, 0.8178, 0.8810,
    0.9337, 0.9404, 0.9732, 0.9858,
];

const DATASET_6: [f64; 50] = [
    0.014, 0.034, 0.059, 0.061, 0.069, 0.080, 0.123, 0.142, 0.165, 0.210,
    0.381, 0.464, 0.479, 0.556, 0.574, 0.839, 0.917, 0.969, 0.991, 1.064,
    1.088, 1.091, 1.174, 1.270, 1.275, 1.355, 1.397, 1.477, 1.578, 1.649,
    1.702, 1.893, 1.932, 2.001, 2.161, 2.292, 2.326, 2.337, 2.628, 2.785,
    2.811, 2.886, 2.993, 3.122, 3.248, 3.715, 3.790, 3.857, 3.912, 4.100,
];

pub static DATASETS: [Dataset; 6] = [
    Dataset {
        id: "dataset-1",
        values: &DATASET_1,
        reference_m: 2,
        description: "20 process measurements; a normal model fits",
        sha256: "3d636434c545db5f934a893becf1435a8c0a039c1cf31f3f3ce9996da2b0bd30",
    },
    Dataset {
        id: "dataset-2",
        values: &DATASET_2,
        reference_m: 20,
        description: "45 active repair times (hours) of an airborne transceiver",
        sha256: "7a72b5d15379fc88dd7d953392190c1e5c580763fc5f5b19f00801ab3cf2d858",
    },
    Dataset {
        id: "dataset-3",
        values: &DATASET_3,
        reference_m: 3,
        description: "43 measurements; a normal model fits",
        sha256: "295b4464baab19812b059d273c922f34ea2bda7e3bccc9162c0176bd8b8c4c7f",
    },
    Dataset {
        id: "dataset-4",
        values: &DATASET_4,
        reference_m: 25,
        description: "51 measurements; a right-skewed model fits",
        sha256: "b6f4f0db7e547ba748ab427877627027f1c9ea94953417e6995a996ea6641a68",
    },
    Dataset {
        id: "dataset-5",
        values: &DATASET_5,
        reference_m: 11,
        description: "34 vinyl chloride readings mapped onto [0, 1]",
        sha256: "3cad00f4d28188cd7a24be5a7d1d93e39e34efdd9efa5b708db71c4da502413e",
    },
    Dataset {
        id: "dataset-6",
        values: &DATASET_6,
        reference_m: 2,
        description: "50 appliance failure times (thousands of cycles)",
        sha256: "2df8b98fb82d6f20b15d0929b85af31e33f930a630bf07f811d39aa658b32509",
    },
];

/// Looks up `dataset-K` (or just `K`).
pub fn lookup(id: &str) -> Option<&'static Dataset> {
    let key = id.trim().to_ascii_lowercase();
    let key = key.strip_prefix("dataset-").unwrap_or(&key);
    DATASETS.iter().find(|d| d.id.strip_prefix("dataset-") == Some(key))
}
