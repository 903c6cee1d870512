char *buf;

void handle(int n)
{
#ifdef CONFIG_A
    buf = alloc(n);
#endif
#ifdef CONFIG_B
    free(buf);
#endif
}
