//! Reading partitions, matrices and shapes from JSON files.

use std::io::Read;
use std::path::Path;

use hdpart::diagram::diagram;
use hdpart::{DdPartition, DiagramSet, NdArray};
use serde_json::Value;

use crate::Failure;

/// Reads a JSON document from `path`, or from stdin when `path` is `-`.
pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("parsing {}: {e}", path.display())))
}

fn decode<T: serde::de::DeserializeOwned>(path: &Path, v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<NdArray, Failure> {
    decode(path, read_json(path)?)
}

pub fn read_partition(path: &Path) -> Result<DdPartition, Failure> {
    decode(path, read_json(path)?)
}

/// A lower set given either as `{"rank", "cells"}` or as a partition, in
/// which case its diagram is used.
pub fn read_shape(path: &Path) -> Result<DiagramSet, Failure> {
    let v = read_json(path)?;
    if v.get("cells").is_some() {
        let set: DiagramSet = decode(path, v)?;
        set.check_lower_set()?;
        Ok(set)
    } else {
        let pi: DdPartition = decode(path, v)?;
        Ok(diagram(&pi))
    }
}
