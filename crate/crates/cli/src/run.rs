use std::time::{Duration, Instant};

use clap::ValueEnum;
use dercheck_core::exact::to_integer;
use dercheck_core::fixed::{derived_fixed_locus_table, Automorphism};
use dercheck_core::group::FiniteMatrixGroup;
use dercheck_core::intersection::{IntersectionInstance, TorRoute};
use dercheck_core::orbifold::{self, HhKind};
use dercheck_core::{oracle, Comparison, HilbertTable, RationalMatrix, Window};
use rayon::prelude::*;

use crate::instance::{Instance, Kind, Payload};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Tor,
    Excess,
    HkrKernel,
    Ext,
    Fixed,
    Hh,
    Full,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Tor => "tor",
            Command::Excess => "excess",
            Command::HkrKernel => "hkr-kernel",
            Command::Ext => "ext",
            Command::Fixed => "fixed",
            Command::Hh => "hh",
            Command::Full => "full",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Routes {
    #[default]
    All,
    X,
    Y,
    Diag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub window: Option<Window>,
    pub routes: Routes,
    pub oracle: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { window: None, routes: Routes::All, oracle: true }
    }
}

/// Both sides of a table comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides {
    pub left_label: String,
    pub left: HilbertTable,
    pub right_label: String,
    pub right: HilbertTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub facts: Vec<(String, String)>,
    pub sides: Option<Sides>,
}

impl Check {
    fn compare(name: impl Into<String>, c: Comparison) -> Self {
        let passed = c.passed();
        Self {
            name: name.into(),
            passed,
            facts: Vec::new(),
            sides: Some(Sides { left_label: c.left_label, left: c.left, right_label: c.right_label, right: c.right }),
        }
    }

    fn tables(name: impl Into<String>, left_label: &str, left: HilbertTable, right_label: &str, right: HilbertTable) -> Self {
        Self::compare(name, Comparison::new("", left_label, left, right_label, right))
    }

    fn fact(mut self, key: &str, value: impl ToString) -> Self {
        self.facts.push((key.to_string(), value.to_string()));
        self
    }

    fn require(mut self, ok: bool) -> Self {
        self.passed &= ok;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub echo: Vec<(String, String)>,
    pub command: Command,
    pub window: Window,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Task<'a> = Box<dyn Fn() -> Result<Vec<Check>, CliError> + Send + Sync + 'a>;

fn incompatible(command: Command, kind: Kind) -> CliError {
    CliError::Incompatible(format!("command {} does not apply to {kind} instances", command.name()))
}

fn selected_routes(routes: Routes, oracle: bool) -> Result<Vec<TorRoute>, CliError> {
    let mut list = match routes {
        Routes::All => TorRoute::ALL.to_vec(),
        Routes::X => vec![TorRoute::ResolveX],
        Routes::Y => vec![TorRoute::ResolveY],
        Routes::Diag => vec![TorRoute::Diagonal],
    };
    if !oracle {
        if routes == Routes::Diag {
            return Err(CliError::Incompatible("the diagonal route is the oracle; it cannot be combined with --no-oracle".into()));
        }
        list.retain(|&r| r != TorRoute::Diagonal);
    }
    Ok(list)
}

fn tor_checks(inst: &IntersectionInstance, routes: &[TorRoute], window: Window) -> Vec<Check> {
    let tables: Vec<HilbertTable> = routes.par_iter().map(|&r| inst.tor_table(r, window)).collect();
    if routes.len() == 1 {
        let predicted = inst.analyze().wedge_dual_table(&[0], window);
        let name = format!("tor:{}=excess", routes[0].name());
        return vec![Check::tables(name, routes[0].name(), tables[0].clone(), "wedge_excess_dual", predicted)];
    }
    routes[1..]
        .iter()
        .zip(&tables[1..])
        .map(|(r, t)| {
            let name = format!("tor:{}={}", routes[0].name(), r.name());
            Check::tables(name, routes[0].name(), tables[0].clone(), r.name(), t.clone())
        })
        .collect()
}

fn excess_checks(inst: &IntersectionInstance, window: Window) -> Vec<Check> {
    let data = inst.analyze();
    let (split, normal) = (data.splitting_holds(), data.normal_sequence_exact());
    let excess = Check::compare("excess", inst.verify_excess_tor(window))
        .fact("dim_x", inst.dim_x())
        .fact("dim_y", inst.dim_y())
        .fact("dim_w", inst.dim_w())
        .fact("excess_rank", data.rank())
        .fact("codim_w_in_y", inst.codim_w_in_y())
        .fact("splitting", split)
        .fact("normal_sequence_exact", normal)
        .require(split && normal);
    let euler = inst.verify_euler_characteristic(window);
    let fmt = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let euler_check = Check { name: "euler".into(), passed: euler.passed(), facts: Vec::new(), sides: None }
        .fact("computed", fmt(&euler.computed))
        .fact("predicted", fmt(&euler.predicted));
    vec![excess, euler_check]
}

fn intersection_tasks<'a>(inst: &'a IntersectionInstance, payload: &'a Payload, command: Command, options: Options, window: Window) -> Result<Vec<Task<'a>>, CliError> {
    let Payload::Intersection { f_twists, g_twists, hkr_twists, .. } = payload else { unreachable!() };
    let mut tasks: Vec<Task<'a>> = Vec::new();
    if matches!(command, Command::Tor | Command::Full) {
        let routes = selected_routes(if command == Command::Full { Routes::All } else { options.routes }, options.oracle)?;
        tasks.push(Box::new(move || Ok(tor_checks(inst, &routes, window))));
    }
    if matches!(command, Command::Excess | Command::Full) {
        tasks.push(Box::new(move || Ok(excess_checks(inst, window))));
    }
    if matches!(command, Command::HkrKernel | Command::Full) {
        tasks.push(Box::new(move || Ok(vec![Check::compare("hkr_kernel", inst.verify_hkr_kernel(hkr_twists, window))])));
    }
    if matches!(command, Command::Ext | Command::Full) {
        tasks.push(Box::new(move || Ok(vec![Check::compare("ext", inst.ext_table(f_twists, g_twists, window))])));
    }
    if tasks.is_empty() {
        return Err(incompatible(command, Kind::Intersection));
    }
    Ok(tasks)
}

fn fixed_check(phi: &Automorphism, window: Window) -> Check {
    let c = derived_fixed_locus_table(phi, window);
    let passed = c.passed();
    let (retraction, image) = (c.retraction, c.image);
    let mut check = Check::tables("fixed_locus", "tor", c.tor, "forms", c.forms)
        .fact("order", phi.order())
        .fact("dim_w", c.dim_w)
        .fact("codim", phi.n() - c.dim_w)
        .fact("excess_rank", c.excess_rank)
        .fact("retraction", retraction)
        .fact("image_is_fixed", image);
    check.passed = passed;
    check
}

fn fixed_oracle_check(phi: &Automorphism, window: Window) -> Result<Check, CliError> {
    let group = FiniteMatrixGroup::build(std::slice::from_ref(phi.matrix()), phi.order() as usize)?;
    let g = group.elements().iter().position(|e| e == phi.matrix()).expect("generator lies in its group");
    let tor = oracle::twisted_tor_oracle(&group, g, window).table;
    let forms = derived_fixed_locus_table(phi, window).forms;
    Ok(Check::tables("fixed_locus:oracle", "oracle_tor", tor, "forms", forms))
}

fn fixed_tasks<'a>(phi: &'a Automorphism, graph: &'a IntersectionInstance, command: Command, options: Options, window: Window) -> Result<Vec<Task<'a>>, CliError> {
    let mut tasks: Vec<Task<'a>> = Vec::new();
    if matches!(command, Command::Fixed | Command::Full) {
        tasks.push(Box::new(move || Ok(vec![fixed_check(phi, window)])));
        if options.oracle {
            tasks.push(Box::new(move || Ok(vec![fixed_oracle_check(phi, window)?])));
        }
    }
    if matches!(command, Command::Tor | Command::Full) {
        let routes = selected_routes(if command == Command::Full { Routes::All } else { options.routes }, options.oracle)?;
        tasks.push(Box::new(move || Ok(tor_checks(graph, &routes, window))));
    }
    if matches!(command, Command::Excess | Command::Full) {
        tasks.push(Box::new(move || Ok(excess_checks(graph, window))));
    }
    if tasks.is_empty() {
        return Err(incompatible(command, Kind::FixedLocus));
    }
    Ok(tasks)
}

fn hh_checks(group: &FiniteMatrixGroup, kind: HhKind, oracle_on: bool, window: Window) -> Result<Vec<Check>, CliError> {
    let (name, table) = match kind {
        HhKind::Cohomology => ("hh_cohomology", orbifold::hh_cohomology(group, window)?),
        HhKind::Homology => ("hh_homology", orbifold::hh_homology(group, window)?),
    };
    let mut main = if oracle_on {
        let side = match kind {
            HhKind::Cohomology => oracle::OracleSide::Ext,
            HhKind::Homology => oracle::OracleSide::Tor,
        };
        let sectors = oracle::all_sectors(group, side, window);
        let invariants = oracle::invariant_table(group, &sectors, window)?;
        Check::tables(name, "sectors", table.total.clone(), "oracle_invariants", invariants)
    } else {
        let fast = orbifold::hh_by_class_representatives(group, kind, window)?;
        Check::tables(name, "sectors", table.total.clone(), "class_representatives", fast)
    };
    for (rep, t) in &table.by_class {
        let summary: Vec<String> = t.entries().map(|((i, u), d)| format!("({i},{u})={d}")).collect();
        main = main.fact(&format!("class_g{rep}"), if summary.is_empty() { "zero".to_string() } else { summary.join(" ") });
    }
    Ok(vec![main])
}

fn invariant_ring_check(group: &FiniteMatrixGroup, window: Window) -> Result<Check, CliError> {
    let hh = orbifold::hh_cohomology(group, window)?.total;
    let mut degree_zero = HilbertTable::new(window);
    for t in window.degrees() {
        degree_zero.set(0, t, hh.get(0, t));
    }
    let molien = orbifold::molien(group, window)?;
    let enumerated = HilbertTable::from_fn(window, [0], |_, t| if t < 0 { 0 } else { oracle::invariants_by_enumeration(group, t as usize) });
    let agree = molien == enumerated;
    Ok(Check::tables("hh0_invariant_ring", "hh_cohomology_row_0", degree_zero, "molien", molien)
        .fact("molien_equals_enumeration", agree)
        .require(agree))
}

fn sector_checks(group: &FiniteMatrixGroup, window: Window) -> Vec<Check> {
    let pushpull = orbifold::delta_pushpull(group, window);
    (0..group.order())
        .into_par_iter()
        .flat_map_iter(|g| {
            let data = orbifold::SectorData::new(group, g);
            let omega: Vec<String> = data.omega.iter().map(|x| to_integer(x).map_or_else(|| x.to_string(), |v| v.to_string())).collect();
            let tor = Check::tables(format!("sector_tor:g{g}"), "forms", pushpull[g].clone(), "oracle_tor", oracle::twisted_tor_oracle(group, g, window).table)
                .fact("dim_fixed", data.dim())
                .fact("codim", data.codim);
            let ext = Check::tables(format!("sector_ext:g{g}"), "polyvectors", data.polyvector_table(window), "oracle_ext", oracle::twisted_ext_oracle(group, g, window).table)
                .fact("omega_degree", data.omega_degree)
                .fact("omega_character", omega.join(","));
            [tor, ext]
        })
        .collect()
}

fn orbifold_tasks<'a>(group: &'a FiniteMatrixGroup, command: Command, options: Options, window: Window) -> Result<Vec<Task<'a>>, CliError> {
    if !matches!(command, Command::Hh | Command::Full) {
        return Err(incompatible(command, Kind::Orbifold));
    }
    let oracle_on = options.oracle;
    let mut tasks: Vec<Task<'a>> = vec![
        Box::new(move || hh_checks(group, HhKind::Cohomology, oracle_on, window)),
        Box::new(move || hh_checks(group, HhKind::Homology, oracle_on, window)),
        Box::new(move || Ok(vec![invariant_ring_check(group, window)?])),
    ];
    if command == Command::Full && oracle_on {
        tasks.push(Box::new(move || Ok(sector_checks(group, window))));
    }
    Ok(tasks)
}

fn matrix_text(m: &RationalMatrix) -> String {
    m.to_string()
}

fn echo(instance: &Instance) -> Vec<(String, String)> {
    let mut out = vec![("kind".to_string(), instance.kind().to_string())];
    if let Some(name) = &instance.name {
        out.push(("name".into(), name.clone()));
    }
    out.push(("n".into(), instance.n.to_string()));
    let list = |v: &[i64]| format!("[{}]", v.iter().map(i64::to_string).collect::<Vec<_>>().join(", "));
    match &instance.payload {
        Payload::Intersection { x_forms, y_forms, f_twists, g_twists, hkr_twists } => {
            out.push(("x_forms".into(), matrix_text(x_forms)));
            out.push(("y_forms".into(), matrix_text(y_forms)));
            out.push(("f_twists".into(), list(f_twists)));
            out.push(("g_twists".into(), list(g_twists)));
            out.push(("hkr_twists".into(), list(hkr_twists)));
        }
        Payload::FixedLocus { phi, order_bound } => {
            out.push(("phi".into(), matrix_text(phi)));
            out.push(("order_bound".into(), order_bound.to_string()));
        }
        Payload::Orbifold { generators, group_bound } => {
            for (k, g) in generators.iter().enumerate() {
                out.push((format!("generator{k}"), matrix_text(g)));
            }
            out.push(("group_bound".into(), group_bound.to_string()));
        }
    }
    out
}

fn expected_checks(instance: &Instance, checks: &[Check], window: Window) -> Result<Vec<Check>, CliError> {
    instance
        .expected
        .iter()
        .map(|e| {
            let target = checks
                .iter()
                .find(|c| c.name == e.check)
                .ok_or_else(|| CliError::Invalid { field: "expected".into(), message: format!("no check named {:?} in this run", e.check) })?;
            let sides = target.sides.as_ref().ok_or_else(|| CliError::Invalid {
                field: "expected".into(),
                message: format!("check {:?} has no table", e.check),
            })?;
            Ok(Check::tables(format!("expected:{}", e.check), "expected", e.table(window), &sides.left_label, sides.left.clone()))
        })
        .collect()
}

/// Runs every check that `command` selects for this instance. Independent
/// checks run concurrently; results keep a fixed order.
pub fn run(instance: &Instance, command: Command, options: Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let window = options.window.or(instance.window).unwrap_or_else(|| Window::default_for(instance.n));
    let mut checks = match &instance.payload {
        Payload::Intersection { x_forms, y_forms, .. } => {
            let inst = IntersectionInstance::new(instance.n, x_forms, y_forms)?;
            let tasks = intersection_tasks(&inst, &instance.payload, command, options, window)?;
            execute(tasks)?
        }
        Payload::FixedLocus { phi, order_bound } => {
            let phi = Automorphism::new(phi.clone(), *order_bound)?;
            let graph = phi.graph_instance();
            let tasks = fixed_tasks(&phi, &graph, command, options, window)?;
            execute(tasks)?
        }
        Payload::Orbifold { generators, group_bound } => {
            let group = FiniteMatrixGroup::build(generators, *group_bound)?;
            let mut checks = vec![Check { name: "group".into(), passed: true, facts: Vec::new(), sides: None }
                .fact("order", group.order())
                .fact("class_sizes", group.classes().iter().map(|c| c.len().to_string()).collect::<Vec<_>>().join(","))];
            checks.extend(execute(orbifold_tasks(&group, command, options, window)?)?);
            checks
        }
    };
    let extra = expected_checks(instance, &checks, window)?;
    checks.extend(extra);
    Ok(Report { echo: echo(instance), command, window, checks, elapsed: start.elapsed() })
}

fn execute(tasks: Vec<Task<'_>>) -> Result<Vec<Check>, CliError> {
    let results: Vec<Result<Vec<Check>, CliError>> = tasks.par_iter().map(|t| t()).collect();
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(checks)
}
