int x;
int y;

void run(int k)
{
#ifdef CONFIG_A
    x = make(k);
#endif
#ifdef CONFIG_B
    y = x;
#endif
#ifdef CONFIG_C
    sink(y);
#endif
}
