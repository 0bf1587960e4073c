//! Versioned instance-file format: a single JSON object with the crossed
//! module, preorder, presheaf, and optional duality/cosieve blocks.
//! Unknown keys are rejected, all index references are range-checked at
//! parse time, and emission is canonical so emit -> parse -> emit is a
//! byte-level fixpoint.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crossed::CrossedModule;
use crate::group::{FiniteGroup, GroupAction, GroupHom};
use crate::orbit::{InstanceMetadata, OrbitInstance};
use crate::preorder::{Cosieve, EquivariantPreorder, SelfDuality, SubgroupPresheaf};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("not valid instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    BadVersion(u32),
    #[error("group table is not a valid group: {0}")]
    Group(#[from] crate::group::GroupError),
    #[error("group identity must sit at index 0")]
    IdentityNotFirst,
    #[error("crossed module block malformed: {0}")]
    Crossed(#[from] crate::crossed::CrossedModuleError),
    #[error("preorder block malformed: {0}")]
    Preorder(#[from] crate::preorder::PreorderError),
    #[error("preorder action value {0} out of range")]
    ActionValueOutOfRange(usize),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupBlock {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossedModuleBlock {
    #[serde(rename = "G")]
    g: GroupBlock,
    #[serde(rename = "A")]
    a: GroupBlock,
    t: Vec<usize>,
    act: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PreorderBlock {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
    action: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct MetadataBlock {
    #[serde(default)]
    name: String,
    #[serde(default)]
    provenance: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    version: u32,
    #[serde(default)]
    metadata: MetadataBlock,
    crossed_module: CrossedModuleBlock,
    preorder: PreorderBlock,
    presheaf: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    duality: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cosieve: Option<Vec<Vec<bool>>>,
}

fn group_from_block(block: GroupBlock) -> Result<FiniteGroup, FormatError> {
    if block.table.len() != block.order {
        return Err(FormatError::Group(crate::group::GroupError::BadTableShape));
    }
    let group = FiniteGroup::from_table(block.table, block.labels)?;
    if group.identity() != 0 {
        return Err(FormatError::IdentityNotFirst);
    }
    Ok(group)
}

fn group_to_block(group: &FiniteGroup) -> GroupBlock {
    GroupBlock {
        order: group.order(),
        table: group.table().clone(),
        labels: Some(group.labels().to_vec()),
    }
}

pub fn parse_instance(text: &str) -> Result<OrbitInstance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.version != FORMAT_VERSION {
        return Err(FormatError::BadVersion(file.version));
    }
    let g = group_from_block(file.crossed_module.g)?;
    let a = group_from_block(file.crossed_module.a)?;
    let cm = CrossedModule::new(
        g,
        a,
        GroupHom::from_raw(file.crossed_module.t),
        GroupAction::from_raw(
            file.crossed_module.act.first().map_or(0, |p| p.len()),
            file.crossed_module.act,
        ),
    )?;
    let size = file.preorder.elements.len();
    for perm in &file.preorder.action {
        for &v in perm {
            if v >= size {
                return Err(FormatError::ActionValueOutOfRange(v));
            }
        }
    }
    let action = GroupAction::from_raw(size, file.preorder.action);
    let preorder = EquivariantPreorder::new(file.preorder.elements, file.preorder.leq, action)?;
    let presheaf = SubgroupPresheaf::new(cm.source(), size, file.presheaf)?;
    let duality = file.duality.map(|d| SelfDuality::new(size, d)).transpose()?;
    let cosieve = file.cosieve.map(|c| Cosieve::new(size, c)).transpose()?;
    Ok(OrbitInstance {
        cm,
        preorder,
        presheaf,
        duality,
        cosieve,
        metadata: InstanceMetadata {
            name: file.metadata.name,
            provenance: file.metadata.provenance,
        },
    })
}

pub fn emit_instance(inst: &OrbitInstance) -> String {
    let file = InstanceFile {
        version: FORMAT_VERSION,
        metadata: MetadataBlock {
            name: inst.metadata.name.clone(),
            provenance: inst.metadata.provenance.clone(),
        },
        crossed_module: CrossedModuleBlock {
            g: group_to_block(inst.cm.source()),
            a: group_to_block(inst.cm.cells()),
            t: inst.cm.target_map().map().to_vec(),
            act: inst.cm.action().perms().clone(),
        },
        preorder: PreorderBlock {
            elements: inst.preorder.labels().to_vec(),
            leq: inst.preorder.leq_matrix().clone(),
            action: inst.preorder.action().perms().clone(),
        },
        presheaf: inst.presheaf.groups().clone(),
        duality: inst.duality.as_ref().map(|d| d.map().to_vec()),
        cosieve: inst.cosieve.as_ref().map(|c| c.matrix().clone()),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("instance serializes");
    out.push('\n');
    out
}
