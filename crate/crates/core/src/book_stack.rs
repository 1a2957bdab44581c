//! Recency-ordered registry of query items.
//!
//! The stack is an intrusive doubly-linked list over `|I|` slots, most recent
//! on top. A dense locator array maps item ids to slots so `touch`, `oldest`
//! and `second_oldest` are O(1). Positions are stored rather than elapsed
//! times; the elapsed time at index `i` is `i - last_seen`. An item that has
//! never been seen has `last_seen == NEVER` (-1), so the gap preceding its
//! first occurrence at `i` has length `i - (-1) - 1 = i`.

use crate::error::{Error, Result};
use crate::sequence::{Item, ItemSet};

/// Sentinel position for an item that has not been observed yet.
pub const NEVER: i64 = -1;

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct BookStack {
    items: Vec<Item>,
    last_seen: Vec<i64>,
    /// Toward the top (more recent).
    up: Vec<u32>,
    /// Toward the bottom (older).
    down: Vec<u32>,
    top: u32,
    bottom: u32,
    locator: Vec<u32>,
}

impl BookStack {
    /// Registers the items of `set`. The first item ends up on top and the
    /// last at the bottom; every item starts as never seen.
    pub fn new(set: &ItemSet) -> Self {
        let k = set.len();
        let mut locator = vec![NIL; set.id_bound()];
        for (slot, item) in set.items().iter().enumerate() {
            locator[item.index()] = slot as u32;
        }
        let up = (0..k)
            .map(|s| if s == 0 { NIL } else { s as u32 - 1 })
            .collect();
        let down = (0..k)
            .map(|s| if s + 1 == k { NIL } else { s as u32 + 1 })
            .collect();
        Self {
            items: set.items().to_vec(),
            last_seen: vec![NEVER; k],
            up,
            down,
            top: 0,
            bottom: k as u32 - 1,
            locator,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    fn slot(&self, item: Item) -> Option<u32> {
        match self.locator.get(item.index()) {
            Some(&s) if s != NIL => Some(s),
            _ => None,
        }
    }

    #[inline]
    pub fn contains(&self, item: Item) -> bool {
        self.slot(item).is_some()
    }

    pub fn last_seen(&self, item: Item) -> Result<i64> {
        let s = self.slot(item).ok_or(Error::UnregisteredItem(item))?;
        Ok(self.last_seen[s as usize])
    }

    /// Records `item` at `position` and moves it to its recency rank.
    ///
    /// When `position` is at least the top entry's position (the streaming
    /// case) this is an O(1) move to the top. Otherwise the entry is sunk to
    /// the highest rank that keeps the order weakly sorted, which pattern
    /// counting needs because occurrence starts can lag behind other entries.
    pub fn touch(&mut self, item: Item, position: i64) -> Result<()> {
        let s = self.slot(item).ok_or(Error::UnregisteredItem(item))?;
        let last = self.last_seen[s as usize];
        if position <= last {
            return Err(Error::StalePosition {
                item,
                position,
                last_seen: last,
            });
        }
        self.last_seen[s as usize] = position;
        self.unlink(s);
        // Walk down from the top past every entry more recent than `position`.
        let mut above = NIL;
        let mut cur = self.top;
        while cur != NIL && self.last_seen[cur as usize] > position {
            above = cur;
            cur = self.down[cur as usize];
        }
        self.link_between(s, above, cur);
        Ok(())
    }

    fn unlink(&mut self, s: u32) {
        let (u, d) = (self.up[s as usize], self.down[s as usize]);
        match u {
            NIL => self.top = d,
            u => self.down[u as usize] = d,
        }
        match d {
            NIL => self.bottom = u,
            d => self.up[d as usize] = u,
        }
    }

    fn link_between(&mut self, s: u32, above: u32, below: u32) {
        self.up[s as usize] = above;
        self.down[s as usize] = below;
        match above {
            NIL => self.top = s,
            a => self.down[a as usize] = s,
        }
        match below {
            NIL => self.bottom = s,
            b => self.up[b as usize] = s,
        }
    }

    fn entry(&self, s: u32) -> (Item, i64) {
        (self.items[s as usize], self.last_seen[s as usize])
    }

    /// Bottom entry: an item with the minimum last-seen position.
    pub fn oldest(&self) -> (Item, i64) {
        self.entry(self.bottom)
    }

    /// Entry one above the bottom, absent for a single-item stack.
    pub fn second_oldest(&self) -> Option<(Item, i64)> {
        match self.up[self.bottom as usize] {
            NIL => None,
            s => Some(self.entry(s)),
        }
    }

    /// True iff `item` was last seen strictly before every other item.
    pub fn is_unique_oldest(&self, item: Item) -> Result<bool> {
        let s = self.slot(item).ok_or(Error::UnregisteredItem(item))?;
        if s != self.bottom {
            // A strict minimum is necessarily at the bottom of a sorted stack.
            return Ok(false);
        }
        Ok(match self.second_oldest() {
            None => true,
            Some((_, next)) => next > self.last_seen[s as usize],
        })
    }

    /// Every item sharing the minimum last-seen position, bottom first.
    pub fn oldest_tie_group(&self) -> Vec<Item> {
        self.oldest_ties().map(|(item, _)| item).collect()
    }

    pub(crate) fn oldest_ties(&self) -> impl Iterator<Item = (Item, i64)> + '_ {
        let min = self.last_seen[self.bottom as usize];
        self.iter_bottom_up().take_while(move |&(_, p)| p == min)
    }

    /// Minimum last-seen position over the items not in `excluded`.
    pub fn min_last_seen_excluding(&self, excluded: &[Item]) -> Option<i64> {
        self.iter_bottom_up()
            .find(|(item, _)| !excluded.contains(item))
            .map(|(_, p)| p)
    }

    /// Entries from the bottom (oldest) to the top (most recent).
    pub fn iter_bottom_up(&self) -> impl Iterator<Item = (Item, i64)> + '_ {
        let mut cur = self.bottom;
        std::iter::from_fn(move || {
            if cur == NIL {
                return None;
            }
            let e = self.entry(cur);
            cur = self.up[cur as usize];
            Some(e)
        })
    }
}
