int message;

int main(void)
{
    message = 1;
    return message;
}
