use anyhow::Result;
use tribell::inequality::catalog::{self, Form, INFO};

use crate::args::FormArg;
use crate::Status;

pub fn run(form: Option<FormArg>, d: Option<usize>) -> Result<Status> {
    let want = form.map(|f| match f {
        FormArg::Probability => Form::Probability,
        FormArg::Correlation => Form::Correlation,
    });
    println!("{:<20} {:<12} {:>2} {:>6}  description", "name", "form", "d", "bound");
    for info in INFO {
        let entry = catalog::catalog(info.name)?;
        if want.is_some_and(|f| f != info.form) || d.is_some_and(|d| d != entry.d()) {
            continue;
        }
        println!(
            "{:<20} {:<12} {:>2} {:>6}  {}",
            info.name,
            info.form.as_str(),
            entry.d(),
            entry.bound_string(),
            info.description
        );
    }
    Ok(Status::Success)
}
