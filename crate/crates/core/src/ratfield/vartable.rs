//! The ordered table of symbols shared by every value in one computation.
//!
//! Slot order is fixed: `ħ`, `𝐭`, the flavor masses `z_k`, the gauge
//! variables `w_{i,r}` grouped by vertex, three spectral slots, and finally
//! any auxiliary symbols requested by a caller.

/// What a slot stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlotKind {
    Hbar,
    TFlavor,
    /// Flavor mass `z_k` attached to gauge vertex `vertex`.
    Mass { index: usize, vertex: usize },
    /// Gauge variable `w_{vertex, index}`.
    Gauge { vertex: usize, index: usize },
    /// Spectral variable used for generating series.
    Spectral(usize),
    /// Free symbol with no operator meaning.
    Aux(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub kind: SlotKind,
    pub name: String,
}

/// Number of spectral slots in every table.
pub const SPECTRAL_SLOTS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    slots: Vec<Slot>,
    masses: Vec<usize>,
    gauge: Vec<usize>,
    spectral: [usize; SPECTRAL_SLOTS],
    aux: Vec<usize>,
}

impl VarTable {
    pub const HBAR: usize = 0;
    pub const TFLAVOR: usize = 1;

    /// Builds a table from mass names (with their vertex), gauge names (with
    /// vertex and index) and auxiliary symbol names.
    pub fn new(
        masses: &[(String, usize)],
        gauge: &[(String, usize, usize)],
        aux: &[String],
    ) -> Self {
        let mut slots = vec![
            Slot { kind: SlotKind::Hbar, name: "hbar".into() },
            Slot { kind: SlotKind::TFlavor, name: "t".into() },
        ];
        let mut mass_slots = Vec::new();
        for (k, (name, vertex)) in masses.iter().enumerate() {
            mass_slots.push(slots.len());
            slots.push(Slot { kind: SlotKind::Mass { index: k, vertex: *vertex }, name: name.clone() });
        }
        let mut gauge_slots = Vec::new();
        for (name, vertex, index) in gauge {
            gauge_slots.push(slots.len());
            slots.push(Slot {
                kind: SlotKind::Gauge { vertex: *vertex, index: *index },
                name: name.clone(),
            });
        }
        let mut spectral = [0; SPECTRAL_SLOTS];
        for (k, s) in spectral.iter_mut().enumerate() {
            *s = slots.len();
            slots.push(Slot { kind: SlotKind::Spectral(k), name: format!("zeta{}", k + 1) });
        }
        let mut aux_slots = Vec::new();
        for (k, name) in aux.iter().enumerate() {
            aux_slots.push(slots.len());
            slots.push(Slot { kind: SlotKind::Aux(k), name: name.clone() });
        }
        VarTable { slots, masses: mass_slots, gauge: gauge_slots, spectral, aux: aux_slots }
    }

    /// A table with only gauge variables named `prefix1..prefixN` on a single vertex.
    pub fn with_gauge(prefix: &str, n: usize) -> Self {
        let gauge: Vec<_> = (0..n).map(|r| (format!("{prefix}{}", r + 1), 0, r)).collect();
        Self::new(&[], &gauge, &[])
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slot(&self, i: usize) -> &Slot {
        &self.slots[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.slots[i].name
    }

    pub fn hbar(&self) -> usize {
        Self::HBAR
    }

    pub fn tflavor(&self) -> usize {
        Self::TFLAVOR
    }

    pub fn masses(&self) -> &[usize] {
        &self.masses
    }

    pub fn gauge(&self) -> &[usize] {
        &self.gauge
    }

    pub fn spectral(&self, k: usize) -> usize {
        self.spectral[k]
    }

    pub fn aux(&self) -> &[usize] {
        &self.aux
    }

    pub fn is_gauge(&self, i: usize) -> bool {
        matches!(self.slots[i].kind, SlotKind::Gauge { .. })
    }

    pub fn is_spectral(&self, i: usize) -> bool {
        matches!(self.slots[i].kind, SlotKind::Spectral(_))
    }

    /// Slot of the gauge variable `w_{vertex, index}`.
    pub fn gauge_slot(&self, vertex: usize, index: usize) -> Option<usize> {
        self.gauge.iter().copied().find(|&s| {
            self.slots[s].kind == SlotKind::Gauge { vertex, index }
        })
    }

    /// Gauge slots of one vertex in index order.
    pub fn vertex_slots(&self, vertex: usize) -> Vec<usize> {
        self.gauge
            .iter()
            .copied()
            .filter(|&s| matches!(self.slots[s].kind, SlotKind::Gauge { vertex: v, .. } if v == vertex))
            .collect()
    }

    /// Mass slots attached to one vertex.
    pub fn vertex_masses(&self, vertex: usize) -> Vec<usize> {
        self.masses
            .iter()
            .copied()
            .filter(|&s| matches!(self.slots[s].kind, SlotKind::Mass { vertex: v, .. } if v == vertex))
            .collect()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.slots.iter().position(|s| s.name == name)
    }
}
