fn main() {
    for r in verlinde::acceptance::run_all() {
        println!("{r}");
    }
}
